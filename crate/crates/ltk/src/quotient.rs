//! The invariant Gram quotient, the isotropic radical of a span, the
//! closed-orbit criterion, and the degeneration onto the closed orbit
//! inside an orbit closure.
//!
//! For `z = (z_1, …, z_N)` the Gram matrix has entries
//! `M_{kj} = z_k • z_j` (bilinear, no conjugation); it is invariant
//! under the diagonal `SO_ℂ(1,n)` action. The span `L(z)` is the
//! complex column span, and the radical `L(z)⁰` is the subspace of
//! `L(z)` pairing to zero with all of `L(z)`. The orbit of `z` is
//! closed exactly when the radical vanishes, i.e. when
//! `dim L(z) = rank M`.

use crate::error::{Error, Result};
use crate::minkowski::{lp_raw, C64, CMat, CVec, ConfigPoint, Tolerance};

/// Hard ceiling on the radical pairing condition number; beyond it the
/// split is refused as degenerate.
pub const PAIRING_CONDITION_LIMIT: f64 = 1e12;

/// Scale-aware absolute floor multiplier for rank thresholds.
const RANK_FLOOR: f64 = 1e-13;

/// Singular-value decade ratio under which a rank decision is flagged
/// marginal.
const MARGINAL_DECADE: f64 = 10.0;

/// Symmetric `N×N` matrix of pairwise Lorentz products.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    entries: CMat,
}

impl GramMatrix {
    pub fn copies(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `M_{kj} = z_k • z_j`; exactly symmetric by construction.
pub fn gram_quotient(z: &ConfigPoint) -> GramMatrix {
    let nn = z.copies();
    let mut m = CMat::zeros(nn, nn);
    for k in 0..nn {
        let zk = z.matrix().column(k).into_owned();
        for j in k..nn {
            let zj = z.matrix().column(j).into_owned();
            let p = lp_raw(&zk, &zj);
            m[(k, j)] = p;
            m[(j, k)] = p;
        }
    }
    GramMatrix { entries: m }
}

/// A rank decision together with the evidence for how clear-cut it was.
#[derive(Clone, Copy, Debug)]
pub struct RankDecision {
    /// Number of singular values strictly above the threshold.
    pub rank: usize,
    /// The threshold used: `max(tol.rel·σ_max, 1e−13·‖M‖_max)`.
    pub threshold: f64,
    /// Ratio of the smallest counted to the largest uncounted singular
    /// value; infinite when one of the two sides is empty.
    pub gap_ratio: f64,
    /// True when some singular value lies within half a decade of the
    /// threshold on either side, so that moving the threshold by √10
    /// would change the count. Implies `gap_ratio < 10` when both
    /// sides are populated.
    pub marginal: bool,
}

/// Rank decision for an arbitrary complex matrix.
///
/// A singular value counts iff it exceeds
/// `max(tol.rel · σ_max, 1e−13 · max|entry|)`; the scale-aware floor
/// keeps noise singular values out even under extreme `tol.rel`.
pub fn rank_decision(m: &CMat, tol: Tolerance) -> RankDecision {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankDecision { rank: 0, threshold: 0.0, gap_ratio: f64::INFINITY, marginal: false };
    }
    let max_abs = m.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let sv = m.clone().svd(false, false).singular_values;
    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    let threshold = (tol.rel * sigma_max).max(RANK_FLOOR * max_abs);
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    // Singular values are sorted descending; the decision boundary sits
    // between sv[rank−1] and sv[rank].
    let above = if rank > 0 { sv[rank - 1] } else { f64::INFINITY };
    let below = if rank < sv.len() { sv[rank] } else { 0.0 };
    let gap_ratio = if below > 0.0 { above / below } else { f64::INFINITY };
    let half_decade = MARGINAL_DECADE.sqrt();
    let marginal = threshold > 0.0
        && sv
            .iter()
            .any(|&s| s > threshold / half_decade && s <= threshold * half_decade);
    RankDecision { rank, threshold, gap_ratio, marginal }
}

/// Numeric rank of a complex matrix (see [`rank_decision`]).
pub fn numeric_rank(m: &CMat, tol: Tolerance) -> usize {
    rank_decision(m, tol).rank
}

/// `dim L(z)`: numeric rank of the `(1+n)×N` column matrix.
pub fn span_dimension(z: &ConfigPoint, tol: Tolerance) -> usize {
    rank_decision(z.matrix(), tol).rank
}

/// The radical `L(z)⁰` with the dimensions that produced it.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Euclidean-orthonormal basis of `L(z)⁰`.
    pub basis: Vec<CVec>,
    pub span_dim: usize,
    pub gram_rank: usize,
    /// True when any underlying rank decision was within one decade.
    pub marginal: bool,
}

/// Flip the sign of the spatial rows: `m ↦ J·m`.
fn j_mul(m: &CMat) -> CMat {
    let mut out = m.clone();
    for i in 1..out.nrows() {
        for j in 0..out.ncols() {
            out[(i, j)] = -out[(i, j)];
        }
    }
    out
}

/// Orthonormal basis of the radical `L(z)⁰`.
///
/// Route: `B` = orthonormal span basis (leading left singular vectors
/// of the column matrix), `S = ᵗB J B` the restricted Gram, kernel of
/// `S` = its trailing right singular vectors, radical = `B·K` (again
/// orthonormal since both factors are). The kernel dimension is pinned
/// to `span_dim − gram_rank` so that identity holds on every input; a
/// disagreeing rank decision inside `S` flags the result marginal.
pub fn radical_basis(z: &ConfigPoint, tol: Tolerance) -> Radical {
    let span = rank_decision(z.matrix(), tol);
    let gram = rank_decision(gram_quotient(z).entries(), tol);
    let mut marginal = span.marginal || gram.marginal;
    let span_dim = span.rank;
    let gram_rank = if gram.rank > span_dim {
        // Cannot exceed the span dimension; treat the excess as noise.
        marginal = true;
        span_dim
    } else {
        gram.rank
    };
    let k = span_dim - gram_rank;
    if k == 0 {
        return Radical { basis: Vec::new(), span_dim, gram_rank, marginal };
    }

    let svd = z.matrix().clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let b = u.columns(0, span_dim).into_owned();
    let s = b.transpose() * j_mul(&b);

    let s_svd = s.clone().svd(false, true);
    let s_rank = {
        let max_abs = s.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let smax = s_svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let thr = (tol.rel * smax).max(RANK_FLOOR * max_abs);
        s_svd.singular_values.iter().filter(|&&x| x > thr).count()
    };
    if s_rank != gram_rank {
        marginal = true;
    }
    let v = s_svd.v_t.expect("right singular vectors requested").adjoint();
    let kernel = v.columns(span_dim - k, k);
    let rad = &b * kernel;
    let basis = (0..k).map(|j| rad.column(j).into_owned()).collect();
    Radical { basis, span_dim, gram_rank, marginal }
}

/// Outcome of the closed-orbit criterion.
#[derive(Clone, Copy, Debug)]
pub struct ClosedOrbitCheck {
    pub closed: bool,
    pub span_dim: usize,
    pub gram_rank: usize,
    pub marginal: bool,
}

/// The orbit of `z` is closed iff `dim L(z) = rank π_ℂ(z)`.
pub fn is_orbit_closed(z: &ConfigPoint, tol: Tolerance) -> ClosedOrbitCheck {
    let span = rank_decision(z.matrix(), tol);
    let gram = rank_decision(gram_quotient(z).entries(), tol);
    ClosedOrbitCheck {
        closed: span.rank == gram.rank,
        span_dim: span.rank,
        gram_rank: gram.rank,
        marginal: span.marginal || gram.marginal,
    }
}

/// Decomposition `z_j = u_j + ω_j` with `ω_j ∈ L(z)⁰` and `u_j`
/// Lorentz-orthogonal to the radical and its conjugate.
#[derive(Clone, Debug)]
pub struct IsotropicSplit {
    radical: Vec<CVec>,
    u_part: ConfigPoint,
    omega_part: ConfigPoint,
    pairing_condition: f64,
    marginal: bool,
}

impl IsotropicSplit {
    pub fn radical(&self) -> &[CVec] {
        &self.radical
    }

    pub fn u_part(&self) -> &ConfigPoint {
        &self.u_part
    }

    pub fn omega_part(&self) -> &ConfigPoint {
        &self.omega_part
    }

    /// Condition number of the radical–conjugate pairing matrix; `1`
    /// for an empty radical (the pairing is trivially nondegenerate).
    pub fn pairing_condition(&self) -> f64 {
        self.pairing_condition
    }

    pub fn marginal(&self) -> bool {
        self.marginal
    }
}

/// Split each column against the radical.
///
/// With radical basis `(r_1, …, r_d)`, the coefficients of
/// `ω_j = Σ_l c_{jl} r_l` solve `G·c_j = (z_j • r̄_k)_k` where
/// `G_{kl} = r_l • r̄_k` is the Hermitian pairing matrix. On the tube
/// the pairing is nondegenerate; an effective condition number above
/// `1e12` (numerator floored at 1, since the orthonormal basis makes
/// healthy pairings O(1)) is refused because the decomposition
/// hypothesis (radical meets its conjugate only at zero) has no
/// numerical support there.
pub fn isotropic_split(z: &ConfigPoint, tol: Tolerance) -> Result<IsotropicSplit> {
    let rad = radical_basis(z, tol);
    let d = rad.basis.len();
    if d == 0 {
        let zero = CMat::zeros(1 + z.dim_n(), z.copies());
        return Ok(IsotropicSplit {
            radical: rad.basis,
            u_part: z.clone(),
            omega_part: ConfigPoint::new(zero).expect("zero matrix is finite"),
            pairing_condition: 1.0,
            marginal: rad.marginal,
        });
    }

    let mut g = CMat::zeros(d, d);
    for k in 0..d {
        let rk_bar = rad.basis[k].conjugate();
        for l in 0..d {
            g[(k, l)] = lp_raw(&rad.basis[l], &rk_bar);
        }
    }
    let sv = g.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    // The basis is Euclidean-orthonormal, so pairing entries are O(1)
    // for genuine tube points; flooring the numerator at 1 makes the
    // test also reject pairings that are near-zero in absolute terms
    // (a 1×1 pairing of ~1e−16 has plain condition number 1).
    let cond = if smin > 0.0 { smax.max(1.0) / smin } else { f64::INFINITY };
    if !cond.is_finite() || cond > PAIRING_CONDITION_LIMIT {
        return Err(Error::DegeneratePairing { cond, limit: PAIRING_CONDITION_LIMIT });
    }

    let nn = z.copies();
    let mut rhs = CMat::zeros(d, nn);
    for k in 0..d {
        let rk_bar = rad.basis[k].conjugate();
        for j in 0..nn {
            rhs[(k, j)] = lp_raw(&z.matrix().column(j).into_owned(), &rk_bar);
        }
    }
    let coeff = g
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegeneratePairing { cond: f64::INFINITY, limit: PAIRING_CONDITION_LIMIT })?;

    let mut r_mat = CMat::zeros(1 + z.dim_n(), d);
    for (l, r) in rad.basis.iter().enumerate() {
        r_mat.set_column(l, r);
    }
    let omega = &r_mat * &coeff;
    let u = z.matrix() - &omega;
    Ok(IsotropicSplit {
        radical: rad.basis,
        u_part: ConfigPoint::new(u)?,
        omega_part: ConfigPoint::new(omega)?,
        pairing_condition: cond,
        marginal: rad.marginal,
    })
}

/// Columns `u_j + t·ω_j`: the degeneration family through `z = u + ω`
/// at `t = 1`, reaching the closed-orbit point `u` at `t = 0`.
pub fn gamma_scale(split: &IsotropicSplit, t: C64) -> ConfigPoint {
    let m = split.u_part.matrix() + split.omega_part.matrix() * t;
    ConfigPoint::new_unchecked(m)
}

/// The closed-orbit point in the closure of the orbit of `z`: the
/// `u`-part of the isotropic split. Shares the Gram matrix of `z`.
pub fn closed_orbit_representative(z: &ConfigPoint, tol: Tolerance) -> Result<ConfigPoint> {
    Ok(isotropic_split(z, tol)?.u_part.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_group_element_rng, Realness};
    use crate::minkowski::{eta_real, in_future_tube, MinkowskiVector};
    use crate::sample;
    use nalgebra::{Complex, DVector};
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn col_point(cols: &[&[C64]]) -> ConfigPoint {
        let rows = cols[0].len();
        let m = CMat::from_fn(rows, cols.len(), |i, j| cols[j][i]);
        ConfigPoint::new(m).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    /// The worked radical example: `z = (2i·e₀ + ω, i·e₀)` with
    /// `ω = (0, 1, i)`.
    fn radical_example() -> ConfigPoint {
        col_point(&[
            &[c(0.0, 2.0), c(1.0, 0.0), c(0.0, 1.0)],
            &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        ])
    }

    #[test]
    fn gram_basis_examples() {
        let e0 = col_point(&[&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]]);
        let g = gram_quotient(&e0);
        assert_eq!(g.entries()[(0, 0)], c(1.0, 0.0));

        let e01 = col_point(&[
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let g = gram_quotient(&e01);
        assert_eq!(g.entries()[(0, 0)], c(1.0, 0.0));
        assert_eq!(g.entries()[(0, 1)], c(0.0, 0.0));
        assert_eq!(g.entries()[(1, 0)], c(0.0, 0.0));
        assert_eq!(g.entries()[(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn gram_is_exactly_symmetric() {
        let mut rng = sample::rng_for(03_0001);
        for _ in 0..50 {
            let z = sample::sample_complex_point(&mut rng, 4, 5, 2.0);
            let g = gram_quotient(&z);
            assert_eq!(g.entries(), &g.entries().transpose());
        }
    }

    #[test]
    fn numeric_rank_examples() {
        let zero = CMat::zeros(3, 3);
        assert_eq!(numeric_rank(&zero, tol()), 0);
        let id = CMat::identity(4, 4);
        assert_eq!(numeric_rank(&id, tol()), 4);
        let ones = CMat::from_element(2, 2, c(1.0, 0.0));
        assert_eq!(numeric_rank(&ones, tol()), 1);
    }

    #[test]
    fn rank_decision_flags_marginal_gaps() {
        // Threshold 1e−8; the value 3e−8 sits within half a decade of
        // it, so the count of 2 is fragile.
        let m = CMat::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(3e-8, 0.0)]));
        let d = rank_decision(&m, tol());
        assert_eq!(d.rank, 2);
        assert!(d.marginal, "3e−8 is within √10 of threshold 1e−8");

        // A value just below the threshold is flagged too.
        let m = CMat::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(5e-9, 0.0)]));
        let d = rank_decision(&m, tol());
        assert_eq!(d.rank, 1);
        assert!(d.marginal);

        // Clean decade separation on both sides.
        let m = CMat::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(1e-12, 0.0)]));
        let d = rank_decision(&m, tol());
        assert_eq!(d.rank, 1);
        assert!(!d.marginal);
    }

    #[test]
    fn span_dimension_examples() {
        let e0 = &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)][..];
        let e1 = &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)][..];
        let sum = &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)][..];
        assert_eq!(span_dimension(&col_point(&[e0, e0]), tol()), 1);
        assert_eq!(span_dimension(&col_point(&[e0, e1, sum]), tol()), 2);

        let mut rng = sample::rng_for(03_0002);
        for _ in 0..50 {
            let z = sample::sample_complex_point(&mut rng, 4, 4, 1.0);
            assert_eq!(span_dimension(&z, tol()), 4);
        }
    }

    #[test]
    fn radical_trivial_and_isotropic_examples() {
        let ie0 = col_point(&[&[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!(radical_basis(&ie0, tol()).basis.is_empty());

        let null = col_point(&[&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]]);
        let rad = radical_basis(&null, tol());
        assert_eq!(rad.basis.len(), 1);
        assert_eq!((rad.span_dim, rad.gram_rank), (1, 0));
        let dir = CVec::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]) / c(2.0f64.sqrt(), 0.0);
        let overlap = rad.basis[0].dotc(&dir).norm();
        assert!((overlap - 1.0).abs() < 1e-12, "overlap {overlap}");
    }

    #[test]
    fn radical_worked_example() {
        let z = radical_example();
        let rad = radical_basis(&z, tol());
        assert_eq!((rad.span_dim, rad.gram_rank), (2, 1));
        assert_eq!(rad.basis.len(), 1);
        assert!(!rad.marginal);
        let omega = CVec::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]) / c(2.0f64.sqrt(), 0.0);
        let overlap = rad.basis[0].dotc(&omega).norm();
        assert!((overlap - 1.0).abs() < 1e-12, "overlap {overlap}");
    }

    #[test]
    fn closed_orbit_examples() {
        let zero = ConfigPoint::new(CMat::zeros(3, 2)).unwrap();
        assert!(is_orbit_closed(&zero, tol()).closed);

        let null = col_point(&[&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]]);
        let check = is_orbit_closed(&null, tol());
        assert!(!check.closed);
        assert_eq!((check.span_dim, check.gram_rank), (1, 0));

        assert!(!is_orbit_closed(&radical_example(), tol()).closed);
    }

    #[test]
    fn split_worked_example() {
        let z = radical_example();
        let split = isotropic_split(&z, tol()).unwrap();
        let u_want = col_point(&[
            &[c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let omega_want = col_point(&[
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let du = (split.u_part().matrix() - u_want.matrix())
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        let dw = (split.omega_part().matrix() - omega_want.matrix())
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        assert!(du < 1e-12, "u deviation {du}");
        assert!(dw < 1e-12, "ω deviation {dw}");
        assert!((split.pairing_condition() - 1.0).abs() < 1e-9);

        // Reconstruction and the Lorentz-orthogonality invariants.
        let recon = split.u_part().matrix() + split.omega_part().matrix();
        let dz = (&recon - z.matrix()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!(dz < 1e-12);
        for r in split.radical() {
            for j in 0..z.copies() {
                let u_j = split.u_part().matrix().column(j).into_owned();
                assert!(lp_raw(&u_j, r).norm() < 1e-12);
                assert!(lp_raw(&u_j, &r.conjugate()).norm() < 1e-12);
                let z_j = z.matrix().column(j).into_owned();
                assert!(lp_raw(&z_j, r).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gamma_scale_endpoints() {
        let z = radical_example();
        let split = isotropic_split(&z, tol()).unwrap();
        let at1 = gamma_scale(&split, c(1.0, 0.0));
        let dz = (at1.matrix() - z.matrix()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!(dz < 1e-12);

        let at0 = gamma_scale(&split, c(0.0, 0.0));
        assert_eq!(at0.matrix(), split.u_part().matrix());

        let half = gamma_scale(&split, c(0.5, 0.0));
        let want = col_point(&[
            &[c(0.0, 2.0), c(0.5, 0.0), c(0.0, 0.5)],
            &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let d = (half.matrix() - want.matrix()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!(d < 1e-12);
    }

    #[test]
    fn representative_preserves_gram_and_closes_orbit() {
        let z = radical_example();
        let u = closed_orbit_representative(&z, tol()).unwrap();
        let gz = gram_quotient(&z);
        let gu = gram_quotient(&u);
        assert_eq!(gz.entries()[(0, 0)], c(-4.0, 0.0));
        assert_eq!(gz.entries()[(0, 1)], c(-2.0, 0.0));
        assert_eq!(gz.entries()[(1, 1)], c(-1.0, 0.0));
        let d = (gz.entries() - gu.entries()).iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!(d < 1e-12, "gram deviation {d}");
        assert!(is_orbit_closed(&u, tol()).closed);

        // A closed-orbit input comes back unchanged.
        let w = col_point(&[&[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]]);
        let wu = closed_orbit_representative(&w, tol()).unwrap();
        assert_eq!(wu.matrix(), w.matrix());
    }

    #[test]
    fn gram_invariance_under_complex_so() {
        let mut rng = sample::rng_for(03_0003);
        for k in 0..100 {
            let n = 2 + (k % 3);
            let nn = 1 + (k % 5);
            let z = sample::sample_complex_point(&mut rng, n, nn, 1.5);
            let g = random_group_element_rng(&mut rng, n, 0.8, Realness::Complex);
            let gz = g.apply(&z).unwrap();
            let before = gram_quotient(&z);
            let after = gram_quotient(&gz);
            let scale = before.max_abs().max(1.0);
            let d = (before.entries() - after.entries())
                .iter()
                .map(|x| x.norm())
                .fold(0.0, f64::max);
            assert!(d <= 1e-9 * scale, "gram drift {d} at scale {scale}");
        }
    }

    #[test]
    fn rank_bound_and_consistency_on_random_inputs() {
        let mut rng = sample::rng_for(03_0004);
        for k in 0..200 {
            let n = 1 + (k % 4);
            let nn = 1 + (k % 5);
            let z = sample::sample_complex_point(&mut rng, n, nn, 2.0);
            let g = gram_quotient(&z);
            let r = numeric_rank(g.entries(), tol());
            assert!(r <= (1 + n).min(nn), "rank {r} exceeds min(1+n, N)");
            let rad = radical_basis(&z, tol());
            assert_eq!(rad.basis.len(), rad.span_dim - rad.gram_rank);
        }
    }

    #[test]
    fn planted_radicals_are_recovered() {
        let mut rng = sample::rng_for(03_0005);
        for k in 0..150 {
            let d = k % 3;
            let n = 4;
            let nn = (d + 1).max(2) + (k % 2);
            let z = sample::planted_radical_point(&mut rng, n, d, nn);
            let rad = radical_basis(&z, tol());
            assert_eq!(rad.basis.len(), d, "planted {d}, found {}", rad.basis.len());
            assert!(!rad.marginal, "planted family must be decided cleanly");
            let check = is_orbit_closed(&z, tol());
            assert_eq!(check.closed, d == 0);
        }
    }

    #[test]
    fn tube_radical_vectors_have_negative_eta_im_and_self_pairing() {
        let mut rng = sample::rng_for(03_0006);
        for k in 0..100 {
            let d = 1 + (k % 2);
            let z = sample::planted_radical_point(&mut rng, 4, d, d + 2);
            assert!(in_future_tube(&z, tol()));
            let rad = radical_basis(&z, tol());
            for r in &rad.basis {
                let unit = r / c(r.norm(), 0.0);
                let im = unit.map(|x| x.im);
                assert!(eta_real(&im) < 0.0, "η(Im r) = {}", eta_real(&im));
                let self_pair = lp_raw(&unit, &unit.conjugate());
                assert!(self_pair.re < 0.0 && self_pair.im.abs() < 1e-12,
                    "r•r̄ = {self_pair}");
            }
        }
    }

    #[test]
    fn degeneration_identity_and_tube_persistence() {
        let mut rng = sample::rng_for(03_0007);
        let grid = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
        for k in 0..60 {
            let d = 1 + (k % 2);
            let z = sample::planted_radical_point(&mut rng, 4, d, d + 2);
            let split = isotropic_split(&z, tol()).unwrap();
            for &t in &grid {
                let zt = gamma_scale(&split, c(t, 0.0));
                assert!(in_future_tube(&zt, tol()), "left the tube at t = {t}");
                for j in 0..z.copies() {
                    let eu = eta_real(&split.u_part().column(j).im());
                    let ew = eta_real(&split.omega_part().column(j).im());
                    let et = eta_real(&zt.column(j).im());
                    assert!((et - (eu + t * t * ew)).abs() <= 1e-9,
                        "η(Im(u+tω)) = {et}, expected {}", eu + t * t * ew);
                }
            }
            // Concavity in t: η(Im ω_j) < 0 whenever ω_j is nonzero.
            for j in 0..z.copies() {
                let w = split.omega_part().column(j);
                if w.vector().norm() > 1e-9 {
                    assert!(eta_real(&w.im()) < 0.0);
                }
            }
        }
    }

    #[test]
    fn split_refuses_degenerate_pairing() {
        // Real isotropic column: radical is spanned by a real vector r,
        // so r • r̄ = η(r) = 0 and the pairing is singular.
        let null = col_point(&[&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]]);
        match isotropic_split(&null, tol()) {
            Err(Error::DegeneratePairing { .. }) => {}
            other => panic!("expected degenerate pairing, got {other:?}"),
        }
    }

    #[test]
    fn split_empty_radical_is_identity_split() {
        let mut rng = sample::rng_for(03_0008);
        let z = sample::sample_tube_point(&mut rng, 3, 2, 1.0, 1.0);
        // Generic tube points have trivial radical.
        let split = isotropic_split(&z, tol()).unwrap();
        assert!(split.radical().is_empty());
        assert_eq!(split.u_part().matrix(), z.matrix());
        assert_eq!(split.pairing_condition(), 1.0);
    }

    proptest! {
        #[test]
        fn rank_is_scale_invariant(expo in -6.0f64..6.0, seed in 0u64..1000) {
            let mut rng = sample::rng_for(seed);
            let z = sample::sample_complex_point(&mut rng, 3, 4, 1.0);
            let scale = 10.0f64.powf(expo);
            let scaled = ConfigPoint::new(z.matrix() * c(scale, 0.0)).unwrap();
            prop_assert_eq!(
                span_dimension(&z, tol()),
                span_dimension(&scaled, tol())
            );
            let g = gram_quotient(&z);
            let gs = gram_quotient(&scaled);
            prop_assert_eq!(
                numeric_rank(g.entries(), tol()),
                numeric_rank(gs.entries(), tol())
            );
        }
    }

    // Unused import guard: MinkowskiVector is exercised via columns.
    #[allow(dead_code)]
    fn _types(_: MinkowskiVector) {}
}
