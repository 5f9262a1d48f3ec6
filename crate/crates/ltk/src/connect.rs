//! Connectivity of the admissible set Σ(w) = {g : g·w ∈ T^N} inside a
//! Cartan subgroup: the membership test, the explicit normalized path
//! joining a conforming element to the identity without leaving Σ, and
//! the blockwise monotonicity checks the path argument rests on.
//!
//! Only the imaginary factor `H_I` of the Cartan subgroup carries the
//! path construction; the real factor preserves the tube outright.

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{cartan_element, hi_matrix_raw, CartanParams, CartanVariant, GroupElement};
use crate::minkowski::{in_cone_real, in_future_tube, CMat, ConfigPoint, RVec, Tolerance};
use crate::sample;

/// Whether `g` keeps `w` inside the future tube.
pub fn sigma_contains(g: &GroupElement, w: &ConfigPoint, tol: Tolerance) -> Result<bool> {
    if g.dim_n() != w.dim_n() {
        return Err(Error::DimensionMismatch(format!(
            "sigma_contains: group element at n = {}, point at n = {}",
            g.dim_n(),
            w.dim_n()
        )));
    }
    Ok(in_future_tube(&g.apply(w)?, tol))
}

/// One point of a connecting path.
#[derive(Clone, Debug)]
pub struct PathSample {
    pub t: f64,
    /// Normalized parameters at `t`; they satisfy the circle/hyperbola
    /// constraints exactly up to roundoff.
    pub params: CartanParams,
    pub element: GroupElement,
}

/// A path `γ(t)` inside Σ(w) from the identity (`t = 0`) to a
/// conforming end element (`t = 1`).
#[derive(Clone, Debug)]
pub struct CartanPath {
    variant: CartanVariant,
    start_params: CartanParams,
    end_params: CartanParams,
    samples: Vec<PathSample>,
}

impl CartanPath {
    pub fn variant(&self) -> CartanVariant {
        self.variant
    }

    pub fn start_params(&self) -> &CartanParams {
        &self.start_params
    }

    pub fn end_params(&self) -> &CartanParams {
        &self.end_params
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }
}

/// The straight parameter segment toward the identity, renormalized
/// back onto the constraint set: the circle pair by its Euclidean
/// norm, each hyperbolic pair by `√(c² − d²)`.
fn normalized_interpolant(end: &CartanParams, t: f64, tol: Tolerance) -> Result<CartanParams> {
    let circle = match end.circle() {
        Some((a, b)) => {
            let qa = 1.0 + t * (a - 1.0);
            let qb = t * b;
            // ‖q₁(t)‖² = 1 − 2t(1−t)(1−a); zero only at the antipode.
            let norm = (qa * qa + qb * qb).sqrt();
            if norm <= tol.abs {
                return Err(Error::PathDegenerate { t });
            }
            Some((qa / norm, qb / norm))
        }
        None => None,
    };
    let hyperbolas = end
        .hyperbolas()
        .iter()
        .map(|&(c, d)| {
            let qc = 1.0 + t * (c - 1.0);
            let qd = t * d;
            // η(q_j(t)) = 1 + 2t(1−t)(c−1) ≥ 1 on the hyperbola c ≥ 1.
            let e = qc * qc - qd * qd;
            if e <= tol.abs {
                return Err(Error::PathDegenerate { t });
            }
            let s = e.sqrt();
            Ok((qc / s, qd / s))
        })
        .collect::<Result<Vec<_>>>()?;
    CartanParams::new(end.variant(), circle, hyperbolas)
}

/// Path from the identity to `end_params` through Σ(w), sampled at
/// `sample_count` equally spaced `t ∈ [0, 1]`.
///
/// Every sample is verified to stay in Σ(w); a sample outside it is a
/// contradiction of the connectivity statement and reported loudly.
pub fn cartan_path(
    end_params: &CartanParams,
    w: &ConfigPoint,
    sample_count: usize,
    tol: Tolerance,
) -> Result<CartanPath> {
    let n = w.dim_n();
    let h = cartan_element(end_params, n)?;
    if !in_future_tube(w, tol) {
        return Err(Error::PathPrecondition("base point must lie in the future tube".into()));
    }
    if !sigma_contains(&h, w, tol)? {
        return Err(Error::PathPrecondition(
            "end element must map the base point into the future tube".into(),
        ));
    }
    if sample_count < 2 {
        return Err(Error::InvalidInput(format!(
            "sample_count must be ≥ 2, got {sample_count}"
        )));
    }

    let variant = end_params.variant();
    let start_params = CartanParams::identity_for(variant, n)?;
    let mut samples = Vec::with_capacity(sample_count);
    for i in 0..sample_count {
        let t = i as f64 / (sample_count - 1) as f64;
        let params = normalized_interpolant(end_params, t, tol)?;
        let element = cartan_element(&params, n)?;
        if !sigma_contains(&element, w, tol)? {
            return Err(Error::PathOutsideSigma { t });
        }
        samples.push(PathSample { t, params, element });
    }

    Ok(CartanPath { variant, start_params, end_params: end_params.clone(), samples })
}

/// Scale factors for the monotonicity checks. `shrink` applies to
/// hyperbolic pairs (sound for factors in `(0, 1]`), `stretch` to the
/// circle pair (sound for factors `≥ 1`).
#[derive(Clone, Debug)]
pub struct MonotonicityGrid {
    pub shrink: Vec<f64>,
    pub stretch: Vec<f64>,
}

impl Default for MonotonicityGrid {
    fn default() -> Self {
        MonotonicityGrid {
            shrink: (1..=10).map(|k| k as f64 / 10.0).collect(),
            stretch: vec![1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0],
        }
    }
}

/// Which block a scale factor was applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaledBlock {
    Circle,
    Hyperbola(usize),
}

#[derive(Clone, Debug)]
pub struct MonotonicityViolation {
    pub block: ScaledBlock,
    pub factor: f64,
    pub column: usize,
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    /// Individual (scaled block, column) cone checks performed.
    pub checks: usize,
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Columns of `m·w` whose imaginary part leaves the open cone.
fn cone_image_violations(m: &CMat, w: &ConfigPoint, tol: Tolerance) -> Vec<usize> {
    let img = m * w.matrix();
    (0..w.copies())
        .filter(|&k| {
            let y = RVec::from_fn(img.nrows(), |i, _| img[(i, k)].im);
            !in_cone_real(&y, tol)
        })
        .collect()
}

/// Verify the two block monotonicity properties on a conforming
/// `(params, w)`: shrinking any single hyperbolic pair keeps every
/// column's image in the cone, and so does stretching the circle pair.
///
/// Scaled parameter tuples leave the constraint set, so the scaled
/// matrices are raw block assemblies, not group elements. Grid factors
/// are taken as given (a corrupted grid is how the negative control
/// exercises the detector); `seed` adds a few random factors in the
/// sound ranges on top.
pub fn hi_monotonicity_check(
    params: &CartanParams,
    w: &ConfigPoint,
    seed: u64,
    grid: &MonotonicityGrid,
) -> Result<MonotonicityReport> {
    let n = w.dim_n();
    let tol = Tolerance::default();
    let h = cartan_element(params, n)?;
    if !sigma_contains(&h, w, tol)? {
        return Err(Error::PathPrecondition(
            "monotonicity check needs parameters that keep the base point in the tube".into(),
        ));
    }

    let mut rng = sample::rng_for(seed);
    let mut shrink = grid.shrink.clone();
    shrink.extend((0..8).map(|_| rng.random_range(0.05..=1.0)));
    let mut stretch = grid.stretch.clone();
    stretch.extend((0..8).map(|_| rng.random_range(1.0..=4.0)));

    let mut checks = 0usize;
    let mut violations = Vec::new();

    for j in 0..params.hyperbolas().len() {
        for &r in &shrink {
            let mut hyp = params.hyperbolas().to_vec();
            hyp[j] = (hyp[j].0 * r, hyp[j].1 * r);
            let m = hi_matrix_raw(params.variant(), params.circle(), &hyp, n);
            checks += w.copies();
            for column in cone_image_violations(&m, w, tol) {
                violations.push(MonotonicityViolation {
                    block: ScaledBlock::Hyperbola(j),
                    factor: r,
                    column,
                });
            }
        }
    }
    if params.circle().is_some() {
        for &s in &stretch {
            let circle = params.circle().map(|(a, b)| (a * s, b * s));
            let m = hi_matrix_raw(params.variant(), circle, params.hyperbolas(), n);
            checks += w.copies();
            for column in cone_image_violations(&m, w, tol) {
                violations.push(MonotonicityViolation { block: ScaledBlock::Circle, factor: s, column });
            }
        }
    }

    Ok(MonotonicityReport { checks, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{epsilon, random_cartan_params};
    use crate::minkowski::{C64, MinkowskiVector};

    fn tube_w(rng: &mut impl Rng, n: usize, copies: usize) -> ConfigPoint {
        sample::sample_tube_point(rng, n, copies, 0.5, 0.5)
    }

    #[test]
    fn sigma_contains_basics() {
        let mut rng = sample::rng_for(08_0001);
        let tol = Tolerance::default();
        let w = tube_w(&mut rng, 3, 2);
        let id = GroupElement::identity(3);
        assert!(sigma_contains(&id, &w, tol).unwrap());

        let g = crate::group::random_group_element_rng(&mut rng, 3, 0.4, crate::group::Realness::Real0);
        assert!(sigma_contains(&g, &w, tol).unwrap(), "the real group preserves the tube");

        let w2 = tube_w(&mut rng, 2, 2);
        assert!(sigma_contains(&id, &w2, tol).is_err(), "dimension mismatch must error");
    }

    #[test]
    fn identity_end_gives_constant_path() {
        let mut rng = sample::rng_for(08_0002);
        let w = tube_w(&mut rng, 3, 2);
        let end = CartanParams::identity_for(CartanVariant::H0, 3).unwrap();
        let path = cartan_path(&end, &w, 9, Tolerance::default()).unwrap();
        assert_eq!(path.sample_count(), 9);
        let id = GroupElement::identity(3);
        for s in path.samples() {
            let d = (s.element.matrix() - id.matrix()).map(|c| c.norm()).max();
            assert!(d <= 1e-12, "constant path drifted by {d}");
        }
    }

    #[test]
    fn worked_path_stays_in_sigma_and_hits_the_end() {
        // Perturbed multiples of 2i·e₀ leave a wide tube margin.
        let mut rng = sample::rng_for(08_0003);
        let n = 3;
        let cols: Vec<MinkowskiVector> = (0..2)
            .map(|_| {
                let x = RVec::from_fn(1 + n, |_, _| rng.random_range(-0.1..=0.1));
                let mut y = RVec::zeros(1 + n);
                y[0] = 2.0;
                MinkowskiVector::from_re_im(x, y).unwrap()
            })
            .collect();
        let w = ConfigPoint::from_columns(&cols).unwrap();

        let end = CartanParams::new(
            CartanVariant::H0,
            Some((0.2f64.cos(), 0.2f64.sin())),
            vec![(0.3f64.cosh(), 0.3f64.sinh())],
        )
        .unwrap();
        let h = cartan_element(&end, n).unwrap();
        assert!(sigma_contains(&h, &w, Tolerance::default()).unwrap());

        let path = cartan_path(&end, &w, 64, Tolerance::default()).unwrap();
        assert_eq!(path.sample_count(), 64);
        assert_eq!(path.samples()[0].t, 0.0);
        let last = path.samples().last().unwrap();
        assert_eq!(last.t, 1.0);
        let endpoint_gap = (last.element.matrix() - h.matrix()).map(|c| c.norm()).max();
        assert!(endpoint_gap <= 1e-9, "endpoint off by {endpoint_gap}");
    }

    #[test]
    fn nonconforming_end_is_a_precondition_error() {
        // A strong boost pushes the image's imaginary part spacelike.
        let n = 3;
        let mut y = RVec::zeros(1 + n);
        y[0] = 1.0;
        y[2] = 0.9;
        let w = ConfigPoint::from_columns(&[MinkowskiVector::from_re_im(
            RVec::zeros(1 + n),
            y,
        )
        .unwrap()])
        .unwrap();
        let end = CartanParams::new(
            CartanVariant::H0,
            Some((1.0, 0.0)),
            vec![(3.0f64.cosh(), 3.0f64.sinh())],
        )
        .unwrap();
        match cartan_path(&end, &w, 8, Tolerance::default()) {
            Err(Error::PathPrecondition(_)) => {}
            other => panic!("expected a precondition error, got {other:?}"),
        }
    }

    #[test]
    fn antipodal_circle_interpolant_degenerates_at_the_midpoint() {
        let end =
            CartanParams::new(CartanVariant::H0, Some((-1.0, 0.0)), vec![(1.0, 0.0)]).unwrap();
        match normalized_interpolant(&end, 0.5, Tolerance::default()) {
            Err(Error::PathDegenerate { t }) => assert_eq!(t, 0.5),
            other => panic!("expected degeneracy at t = 0.5, got {other:?}"),
        }
    }

    #[test]
    fn random_conforming_paths_stay_in_sigma_all_variants() {
        let mut rng = sample::rng_for(08_0004);
        let tol = Tolerance::default();
        let cases = [
            (CartanVariant::H0, 3),
            (CartanVariant::H0, 5),
            (CartanVariant::H1, 4),
            (CartanVariant::H2, 4),
        ];
        for &(variant, n) in &cases {
            let mut built = 0;
            while built < 25 {
                let w = tube_w(&mut rng, n, 2);
                let params = random_cartan_params(&mut rng, variant, n, 0.3).unwrap();
                let h = cartan_element(&params, n).unwrap();
                if !sigma_contains(&h, &w, tol).unwrap() {
                    continue;
                }
                built += 1;
                let path = cartan_path(&params, &w, 16, tol).unwrap();
                for s in path.samples() {
                    if let Some((a, b)) = s.params.circle() {
                        assert!((a * a + b * b - 1.0).abs() <= 1e-9);
                    }
                    for &(c, d) in s.params.hyperbolas() {
                        assert!((c * c - d * d - 1.0).abs() <= 1e-9);
                        assert!(c > 0.0);
                    }
                }
                let h_end = path.samples().last().unwrap();
                let gap = (h_end.element.matrix() - h.matrix()).map(|c| c.norm()).max();
                assert!(gap <= 1e-9);
            }
        }
    }

    #[test]
    fn epsilon_coset_never_meets_sigma() {
        // ε flips the sign of Im(·)₀ and H₂ leaves coordinate 0 fixed,
        // so no H₂ε element can keep a tube point in the tube.
        let mut rng = sample::rng_for(08_0005);
        let tol = Tolerance::default();
        for trial in 0..100 {
            let n = if trial % 2 == 0 { 2 } else { 4 };
            let w = tube_w(&mut rng, n, 2);
            let params = random_cartan_params(&mut rng, CartanVariant::H2, n, 0.8).unwrap();
            let h = cartan_element(&params, n).unwrap();
            let he = h.compose(&epsilon(n).unwrap(), tol).unwrap();
            assert!(
                !sigma_contains(&he, &w, tol).unwrap(),
                "ε-coset element kept a tube point in the tube"
            );
        }
    }

    #[test]
    fn monotonicity_holds_on_random_conforming_pairs() {
        let mut rng = sample::rng_for(08_0006);
        let tol = Tolerance::default();
        let grid = MonotonicityGrid::default();
        let cases = [
            (CartanVariant::H0, 3),
            (CartanVariant::H1, 4),
            (CartanVariant::H2, 4),
        ];
        for &(variant, n) in &cases {
            let mut built = 0;
            while built < 15 {
                let w = tube_w(&mut rng, n, 2);
                let params = random_cartan_params(&mut rng, variant, n, 0.3).unwrap();
                if !sigma_contains(&cartan_element(&params, n).unwrap(), &w, tol).unwrap() {
                    continue;
                }
                built += 1;
                let report = hi_monotonicity_check(&params, &w, 123, &grid).unwrap();
                assert!(report.checks > 0);
                assert!(report.passed(), "violations: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn corrupted_shrink_grid_is_detected() {
        // w = i(2e₀ + 1.2e₂) at n = 3 with the τ pair at cosh/sinh 0.8:
        // stretching that pair by r ≥ 2/(1.2·cosh 0.8) ≈ 1.246 pushes
        // Im(ψ̃(p)·w) = (2, 0, 1.2·r·cosh 0.8, 0) off the cone, so a
        // shrink grid corrupted to r > 1 must report violations.
        let n = 3;
        let mut y = RVec::zeros(1 + n);
        y[0] = 2.0;
        y[2] = 1.2;
        let w = ConfigPoint::from_columns(&[MinkowskiVector::from_re_im(
            RVec::zeros(1 + n),
            y,
        )
        .unwrap()])
        .unwrap();
        let params = CartanParams::new(
            CartanVariant::H0,
            Some((1.0, 0.0)),
            vec![(0.8f64.cosh(), 0.8f64.sinh())],
        )
        .unwrap();

        let clean = hi_monotonicity_check(&params, &w, 7, &MonotonicityGrid::default()).unwrap();
        assert!(clean.passed());

        let corrupted = MonotonicityGrid { shrink: vec![1.5, 2.0], stretch: vec![] };
        let report = hi_monotonicity_check(&params, &w, 7, &corrupted).unwrap();
        assert_eq!(report.violations.len(), 2, "both corrupted factors must trip");
        for v in &report.violations {
            assert!(v.factor > 1.0);
            assert_eq!(v.block, ScaledBlock::Hyperbola(0));
        }
    }

    #[test]
    fn scaled_blocks_are_not_group_elements() {
        // The raw scaled assembly violates ᵗgJg = J, which is why the
        // monotonicity check acts by the raw matrix.
        let m = hi_matrix_raw(CartanVariant::H0, Some((1.0, 0.0)), &[(0.5, 0.0)], 3);
        let g = GroupElement::validate(m.clone(), Tolerance::default());
        assert!(!g.is_valid() || g.residual() > 0.1);
        assert_eq!(m[(2, 2)], C64::new(0.5, 0.0));
    }
}
