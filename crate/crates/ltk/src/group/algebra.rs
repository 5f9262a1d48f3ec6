//! The Lie algebra `so(1,n)`: canonical basis, matrix exponential, and
//! seeded random group elements.
//!
//! The basis is fixed once and for all so that moment-map coordinates
//! are reproducible: boosts `B_k = e₀ᵗe_k + e_kᵗe₀` for `k = 1..n`
//! (ascending), then rotations `R_{kl} = e_kᵗe_l − e_lᵗe_k` for
//! `1 ≤ k < l ≤ n` (lexicographic). The dimension is `n(n+1)/2`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::minkowski::{C64, CMat, Tolerance};
use crate::sample;

use super::{max_abs, one_norm, GroupElement};

/// A matrix satisfying the infinitesimal isometry condition
/// `ᵗξJ + Jξ = 0`.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    m: CMat,
}

impl AlgebraElement {
    /// Validates `‖ᵗξJ + Jξ‖_max ≤ tol.abs·max(1, ‖ξ‖_max)`.
    pub fn new(m: CMat, tol: Tolerance) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "algebra element must be square of size ≥ 2, got {}×{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("algebra element entry".into()));
        }
        let dim = m.nrows();
        let mut resid: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let si = if i == 0 { 1.0 } else { -1.0 };
                let sj = if j == 0 { 1.0 } else { -1.0 };
                // (ᵗξJ + Jξ)_{ij} = ξ_{ji}·s_j + s_i·ξ_{ij}
                let v = m[(j, i)] * C64::new(sj, 0.0) + m[(i, j)] * C64::new(si, 0.0);
                resid = resid.max(v.norm());
            }
        }
        let scale = max_abs(&m).max(1.0);
        if resid > tol.abs * scale {
            return Err(Error::InvalidAlgebraElement(format!(
                "ᵗξJ + Jξ residual {resid:.3e} exceeds {:.3e}",
                tol.abs * scale
            )));
        }
        Ok(AlgebraElement { m })
    }

    pub fn dim_n(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    /// `c·ξ`; the algebra is closed under scalar multiplication, so no
    /// revalidation is needed.
    pub fn scaled(&self, c: C64) -> AlgebraElement {
        AlgebraElement { m: &self.m * c }
    }
}

/// The fixed ordered basis of `so(1,n)`: boosts, then rotations.
pub fn algebra_basis(n: usize) -> Vec<AlgebraElement> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for k in 1..=n {
        let mut m = CMat::zeros(1 + n, 1 + n);
        m[(0, k)] = C64::new(1.0, 0.0);
        m[(k, 0)] = C64::new(1.0, 0.0);
        out.push(AlgebraElement { m });
    }
    for k in 1..=n {
        for l in (k + 1)..=n {
            let mut m = CMat::zeros(1 + n, 1 + n);
            m[(k, l)] = C64::new(1.0, 0.0);
            m[(l, k)] = C64::new(-1.0, 0.0);
            out.push(AlgebraElement { m });
        }
    }
    out
}

/// Human-readable names aligned with [`algebra_basis`]: `B1..Bn`, then
/// `R12`, `R13`, ….
pub fn basis_labels(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for k in 1..=n {
        out.push(format!("B{k}"));
    }
    for k in 1..=n {
        for l in (k + 1)..=n {
            out.push(format!("R{k}{l}"));
        }
    }
    out
}

/// `Σ_a coeffs[a]·ξ_a` over the fixed basis, assembled sparsely.
pub fn algebra_combination(coeffs: &[C64], n: usize) -> AlgebraElement {
    assert_eq!(
        coeffs.len(),
        n * (n + 1) / 2,
        "need one coefficient per basis element"
    );
    let mut m = CMat::zeros(1 + n, 1 + n);
    let mut idx = 0;
    for k in 1..=n {
        m[(0, k)] += coeffs[idx];
        m[(k, 0)] += coeffs[idx];
        idx += 1;
    }
    for k in 1..=n {
        for l in (k + 1)..=n {
            m[(k, l)] += coeffs[idx];
            m[(l, k)] -= coeffs[idx];
            idx += 1;
        }
    }
    AlgebraElement { m }
}

/// Guard against runaway exponentials: `|t|·‖ξ‖_∞` above this errs.
pub const DEFAULT_EXP_CAP: f64 = 50.0;

/// `exp(t·ξ)` with the default argument cap.
pub fn exp_algebra(xi: &AlgebraElement, t: C64) -> Result<GroupElement> {
    exp_algebra_capped(xi, t, DEFAULT_EXP_CAP)
}

/// `exp(t·ξ)` by scaling-and-squaring with a degree-13 Padé kernel.
///
/// Accuracy is better than `1e−12` relative for `‖tξ‖ ≤ 5`. The result
/// is validated: `complex_SO` in general, `real_SO0` when `t` and `ξ`
/// are both real.
pub fn exp_algebra_capped(xi: &AlgebraElement, t: C64, cap: f64) -> Result<GroupElement> {
    let arg = t.norm() * one_norm(&xi.m);
    if !arg.is_finite() || arg > cap {
        return Err(Error::ExpOverflow { arg, cap });
    }
    let a = &xi.m * t;
    Ok(GroupElement::validate(expm(&a), Tolerance::default()))
}

// Degree-13 Padé numerator coefficients and the matching 1-norm
// threshold for double precision.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

pub(crate) fn expm(a: &CMat) -> CMat {
    let dim = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        ((norm / THETA13).log2().ceil() as i32).max(0)
    } else {
        0
    };
    let a1 = a * C64::new(0.5f64.powi(s), 0.0);
    let a2 = &a1 * &a1;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = CMat::identity(dim, dim);
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let u = &a1
        * (&a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
            + &a6 * b(7)
            + &a4 * b(5)
            + &a2 * b(3)
            + &id * b(1));
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let mut r = (&v - &u)
        .lu()
        .solve(&(&v + &u))
        .expect("Padé denominator is nonsingular after scaling");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Realness request for random elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realness {
    /// Real coefficients: lands in the identity component `SO_ℝ(1,n)⁰`.
    Real0,
    /// Complex coefficients: lands in `SO_ℂ(1,n)`.
    Complex,
}

/// `exp(Σ a_k ξ_k)` with coefficients i.i.d. uniform in
/// `[−scale, scale]` (each part, when complex), drawn from `rng`.
///
/// Panics if `scale` pushes the exponential argument past
/// [`DEFAULT_EXP_CAP`]; the intended range is desk scale (`scale ≲ 2`).
pub fn random_group_element_rng<R: Rng>(
    rng: &mut R,
    n: usize,
    scale: f64,
    realness: Realness,
) -> GroupElement {
    assert!(scale > 0.0, "scale must be positive");
    let dim = n * (n + 1) / 2;
    let coeffs: Vec<C64> = (0..dim)
        .map(|_| match realness {
            Realness::Real0 => C64::new(rng.random_range(-scale..=scale), 0.0),
            Realness::Complex => C64::new(
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
            ),
        })
        .collect();
    let xi = algebra_combination(&coeffs, n);
    exp_algebra(&xi, C64::new(1.0, 0.0)).expect("scale within the exponential cap")
}

/// Deterministic-per-seed variant of [`random_group_element_rng`].
pub fn random_group_element(seed: u64, n: usize, scale: f64, realness: Realness) -> GroupElement {
    let mut rng = sample::rng_for(seed);
    random_group_element_rng(&mut rng, n, scale, realness)
}
