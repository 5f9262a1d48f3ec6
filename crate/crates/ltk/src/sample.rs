//! Seeded sampling conventions shared by tests, suites, and the CLI.
//!
//! Every randomized routine in the crate derives its stream from a
//! 64-bit seed through ChaCha, so identical seeds reproduce identical
//! runs on every platform. Suites split a master seed per case with
//! [`suite_case_seed`] so cases can be evaluated in any order or in
//! parallel without changing results.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::minkowski::{C64, CMat, ConfigPoint, MinkowskiVector, RVec};

/// SplitMix64 finalizer; bijective on u64.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a hash of a suite name.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic sub-seed for case `k` of suite `suite` under `master`.
pub fn suite_case_seed(master: u64, suite: &str, k: u64) -> u64 {
    splitmix64(master ^ fnv1a(suite) ^ splitmix64(k))
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the closed unit ball of `ℝ^n`.
pub fn sample_unit_ball<R: Rng>(rng: &mut R, n: usize) -> RVec {
    let dir = RVec::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let norm = dir.norm();
    if norm == 0.0 {
        return RVec::zeros(n);
    }
    let u: f64 = rng.random_range(0.0..1.0f64);
    let radius = u.powf(1.0 / n as f64);
    dir * (radius / norm)
}

/// Random vector of the open forward cone with a controlled margin:
/// spatial part `s` uniform in a ball of the given radius, margin `m`
/// log-uniform in `m_range`, and `y₀ = √(‖s‖² + m²)`, so `η(y) = m²`.
pub fn sample_cone_vector_with_margin<R: Rng>(
    rng: &mut R,
    n: usize,
    spatial_scale: f64,
    m_range: (f64, f64),
) -> MinkowskiVector {
    let s = sample_unit_ball(rng, n) * spatial_scale;
    let m = if m_range.0 == m_range.1 {
        m_range.0
    } else {
        let (lo, hi) = (m_range.0.ln(), m_range.1.ln());
        rng.random_range(lo..hi).exp()
    };
    let mut y = RVec::zeros(1 + n);
    y[0] = (s.norm_squared() + m * m).sqrt();
    for k in 1..=n {
        y[k] = s[k - 1];
    }
    MinkowskiVector::real(y).expect("cone sample is finite by construction")
}

/// The crate-wide cone sampling convention: margin log-uniform in
/// `[0.1, 10]`, spatial part in a ball of radius `scale`.
pub fn sample_cone_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> MinkowskiVector {
    sample_cone_vector_with_margin(rng, n, scale, (0.1, 10.0))
}

/// Real vector with entries uniform in `[−scale, scale]`.
pub fn sample_real_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> MinkowskiVector {
    let v = RVec::from_fn(1 + n, |_, _| rng.random_range(-scale..=scale));
    MinkowskiVector::real(v).expect("finite by construction")
}

/// Random tube point: real parts uniform in `[−x_scale, x_scale]`,
/// imaginary parts drawn by the cone convention with margins in
/// `m_range`.
pub fn sample_tube_point_with_margin<R: Rng>(
    rng: &mut R,
    n: usize,
    copies: usize,
    x_scale: f64,
    y_spatial_scale: f64,
    m_range: (f64, f64),
) -> ConfigPoint {
    let cols: Vec<MinkowskiVector> = (0..copies)
        .map(|_| {
            let y = sample_cone_vector_with_margin(rng, n, y_spatial_scale, m_range);
            let x = RVec::from_fn(1 + n, |_, _| rng.random_range(-x_scale..=x_scale));
            MinkowskiVector::from_re_im(x, y.re()).expect("finite by construction")
        })
        .collect();
    ConfigPoint::from_columns(&cols).expect("columns share n by construction")
}

/// Tube point with the default margin range `[0.1, 10]`.
pub fn sample_tube_point<R: Rng>(
    rng: &mut R,
    n: usize,
    copies: usize,
    x_scale: f64,
    y_spatial_scale: f64,
) -> ConfigPoint {
    sample_tube_point_with_margin(rng, n, copies, x_scale, y_spatial_scale, (0.1, 10.0))
}

/// Complex matrix point with entries uniform in the square
/// `[−scale, scale]²`; not constrained to the tube.
pub fn sample_complex_point<R: Rng>(
    rng: &mut R,
    n: usize,
    copies: usize,
    scale: f64,
) -> ConfigPoint {
    let m = CMat::from_fn(1 + n, copies, |_, _| {
        C64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale))
    });
    ConfigPoint::new(m).expect("finite by construction")
}

/// Tube point with an isotropic radical of prescribed dimension `d`.
///
/// For `d ≥ 1` the columns are built on the null pair vectors
/// `ω_l = e_{2l−1} + i·e_{2l}` (each with `η(ω_l) = 0`, `ω_k•ω_l = 0`,
/// and `ω_l • conj(ω_l) = −2`):
///
/// `z_j = (b_j + i t_j)·e₀ + Σ_l a_{jl} ω_l`
///
/// with `t_j = √(Σ_l |a_{jl}|² + m_j²)` so that `η(Im z_j) = m_j²` with
/// margin `m_j ∈ [0.6, 1.6]`. The coefficient rows are dominated by a
/// scaled identity pattern, small enough against the margins that the
/// degeneration curve `u + t·ω` stays strictly inside the tube for
/// `|t| ≤ 2`, and the full `(1+d)×N` coefficient matrix is resampled
/// until its smallest singular value clears a floor that keeps every
/// rank decision several decades away from its threshold. The span is
/// then `span{e₀, ω_1, …, ω_d}` (dimension
/// `d+1`), the Gram has exact rank one on that span, and the radical is
/// exactly `span{ω_1, …, ω_d}`.
///
/// For `d = 0` the columns are `z_j = s_j e_j + i t_j e₀` with
/// `s_j ∈ [0.7, 1.7]`, `t_j ∈ [1, 2]`: the Gram is
/// `−(t tᵗ + diag(s_j²))`, negative definite, so the orbit is closed
/// with margin `min s_j² ≥ 0.49`.
///
/// Requires `2d ≤ n`, `copies ≥ d+1` for `d ≥ 1`, and `copies ≤ n` for
/// `d = 0`.
pub fn planted_radical_point<R: Rng>(
    rng: &mut R,
    n: usize,
    d: usize,
    copies: usize,
) -> ConfigPoint {
    assert!(2 * d <= n, "planted radical dimension {d} needs 2d ≤ n = {n}");
    if d == 0 {
        assert!(
            (1..=n).contains(&copies),
            "d = 0 recipe needs 1 ≤ N ≤ n, got N = {copies}"
        );
        let mut m = CMat::zeros(1 + n, copies);
        for j in 0..copies {
            let t: f64 = rng.random_range(1.0..=2.0);
            let s: f64 = rng.random_range(0.7..=1.7);
            m[(0, j)] = C64::new(0.0, t);
            m[(j + 1, j)] = C64::new(s, 0.0);
        }
        return ConfigPoint::new_unchecked(m);
    }
    assert!(
        copies >= d + 1,
        "planted radical dimension {d} needs N ≥ d+1, got N = {copies}"
    );
    // Radical coefficients are kept small against the margins: with
    // `3·Σ_l|a_{jl}|² < m_j² − 0.1` the degeneration curve `u + t·ω`
    // has `η(Im) = m_j² + (1−t²)·Σ_l|a_{jl}|² > 0.1 − Σ_l|a_{jl}|²`
    // for `|t| ≤ 2`, so it stays strictly inside the tube there. The
    // scale 0.15 bounds `Σ_l|a_{jl}|²` by 0.085 for d ≤ 2, against
    // `m_j² ≥ 0.36`.
    const SCALE: f64 = 0.15;
    loop {
        // Coefficient rows: row 0 multiplies e₀, row l ≥ 1 multiplies ω_l.
        let mut coeff = CMat::zeros(1 + d, copies);
        for j in 0..copies {
            for l in 1..=d {
                let noise = C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
                coeff[(l, j)] = if j + 1 == l {
                    (C64::new(1.5, 0.0) + noise * 0.25) * SCALE
                } else {
                    noise * (0.4 * SCALE)
                };
            }
            let b: f64 = rng.random_range(-1.5..=1.5);
            let m_j: f64 = rng.random_range(0.6..=1.6);
            let im_norm_sq: f64 = (1..=d).map(|l| coeff[(l, j)].norm_sqr()).sum();
            coeff[(0, j)] = C64::new(b, (im_norm_sq + m_j * m_j).sqrt());
        }
        let sigma_min = coeff
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if sigma_min < 0.25 * SCALE {
            continue;
        }
        let mut m = CMat::zeros(1 + n, copies);
        for j in 0..copies {
            m[(0, j)] = coeff[(0, j)];
            for l in 1..=d {
                let a = coeff[(l, j)];
                m[(2 * l - 1, j)] += a;
                m[(2 * l, j)] += a * C64::new(0.0, 1.0);
            }
        }
        return ConfigPoint::new_unchecked(m);
    }
}
