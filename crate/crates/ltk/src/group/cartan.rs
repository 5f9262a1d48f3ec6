//! The block-diagonal Cartan subgroups of `SO_ℂ(1,n)` and the extra
//! component representative `ε`.
//!
//! Block layout on the `1+n` coordinates, with `σ` a 2×2 block on the
//! coordinate pair `(0,1)` and `τ_j` 2×2 blocks on spatial pairs:
//!
//! * `H₀` (n = 2m−1): `σ ⊕ τ_1 ⊕ … ⊕ τ_{m−1}`;
//! * `H₁` (n = 2m):   `σ ⊕ τ_1 ⊕ … ⊕ τ_{m−1} ⊕ [1]`;
//! * `H₂` (n = 2m):   `[1] ⊕ τ_1 ⊕ … ⊕ τ_m`.
//!
//! For the imaginary form `H_I`: `σ = [[a, ib], [ib, a]]` with
//! `a² + b² = 1` and `τ_j = [[c_j, −i d_j], [i d_j, c_j]]` with
//! `c_j² − d_j² = 1`, `c_j > 0`. The real form `H_ℝ` swaps the roles:
//! a real hyperbolic block `[[c, d], [d, c]]` on `(0,1)` and real
//! rotations `[[a, −b], [b, a]]` on the spatial pairs.

use rand::Rng;

use crate::error::{Error, Result};
use crate::minkowski::{C64, CMat, Tolerance};

use super::GroupElement;

/// Largest accepted violation of `a² + b² = 1` / `c² − d² = 1`.
pub const CARTAN_CONSTRAINT_RESIDUAL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanVariant {
    /// Odd `n = 2m−1`.
    H0,
    /// Even `n = 2m`, trailing scalar block.
    H1,
    /// Even `n = 2m`, leading scalar block, no circle pair.
    H2,
}

impl CartanVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            CartanVariant::H0 => "H0",
            CartanVariant::H1 => "H1",
            CartanVariant::H2 => "H2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "H0" | "h0" => Ok(CartanVariant::H0),
            "H1" | "h1" => Ok(CartanVariant::H1),
            "H2" | "h2" => Ok(CartanVariant::H2),
            other => Err(Error::InvalidInput(format!(
                "unknown Cartan variant {other:?} (expected H0, H1, or H2)"
            ))),
        }
    }
}

/// Parameters of an `H_I` element: one circle pair (absent for `H₂`)
/// and the hyperbolic pairs, validated at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanParams {
    variant: CartanVariant,
    circle: Option<(f64, f64)>,
    hyperbolas: Vec<(f64, f64)>,
}

impl CartanParams {
    pub fn new(
        variant: CartanVariant,
        circle: Option<(f64, f64)>,
        hyperbolas: Vec<(f64, f64)>,
    ) -> Result<Self> {
        match (variant, circle) {
            (CartanVariant::H2, Some(_)) => {
                return Err(Error::InvalidInput(
                    "variant H2 has no circle block; pass circle = None".into(),
                ))
            }
            (CartanVariant::H2, None) => {
                if hyperbolas.is_empty() {
                    return Err(Error::InvalidInput(
                        "variant H2 needs at least one hyperbolic pair".into(),
                    ));
                }
            }
            (_, None) => {
                return Err(Error::InvalidInput(format!(
                    "variant {} requires a circle pair",
                    variant.as_str()
                )))
            }
            (_, Some((a, b))) => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::NonFinite("circle pair".into()));
                }
                let resid = (a * a + b * b - 1.0).abs();
                if resid > CARTAN_CONSTRAINT_RESIDUAL {
                    return Err(Error::InvalidInput(format!(
                        "circle pair ({a}, {b}): |a²+b²−1| = {resid:.3e} exceeds {CARTAN_CONSTRAINT_RESIDUAL:.0e}"
                    )));
                }
            }
        }
        for (j, &(c, d)) in hyperbolas.iter().enumerate() {
            if !c.is_finite() || !d.is_finite() {
                return Err(Error::NonFinite(format!("hyperbolic pair {j}")));
            }
            let resid = (c * c - d * d - 1.0).abs();
            if resid > CARTAN_CONSTRAINT_RESIDUAL {
                return Err(Error::InvalidInput(format!(
                    "hyperbolic pair {j} = ({c}, {d}): |c²−d²−1| = {resid:.3e} exceeds {CARTAN_CONSTRAINT_RESIDUAL:.0e}"
                )));
            }
            if c <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "hyperbolic pair {j} = ({c}, {d}): c must be positive"
                )));
            }
        }
        Ok(CartanParams { variant, circle, hyperbolas })
    }

    /// Identity parameters for the variant matching `n`.
    pub fn identity_for(variant: CartanVariant, n: usize) -> Result<Self> {
        let hyp_count = hyperbola_count(variant, n)?;
        let circle = match variant {
            CartanVariant::H2 => None,
            _ => Some((1.0, 0.0)),
        };
        CartanParams::new(variant, circle, vec![(1.0, 0.0); hyp_count])
    }

    pub fn variant(&self) -> CartanVariant {
        self.variant
    }

    pub fn circle(&self) -> Option<(f64, f64)> {
        self.circle
    }

    pub fn hyperbolas(&self) -> &[(f64, f64)] {
        &self.hyperbolas
    }

    /// The unique `n` these parameters can inhabit.
    pub fn dim_n(&self) -> usize {
        match self.variant {
            CartanVariant::H0 => 2 * (self.hyperbolas.len() + 1) - 1,
            CartanVariant::H1 => 2 * (self.hyperbolas.len() + 1),
            CartanVariant::H2 => 2 * self.hyperbolas.len(),
        }
    }
}

/// Number of hyperbolic pairs the variant carries at dimension `n`,
/// with the parity check.
pub(crate) fn hyperbola_count(variant: CartanVariant, n: usize) -> Result<usize> {
    match variant {
        CartanVariant::H0 => {
            if n % 2 == 1 {
                Ok((n + 1) / 2 - 1)
            } else {
                Err(Error::InvalidInput(format!(
                    "variant H0 needs odd n, got n = {n}"
                )))
            }
        }
        CartanVariant::H1 => {
            if n % 2 == 0 && n >= 2 {
                Ok(n / 2 - 1)
            } else {
                Err(Error::InvalidInput(format!(
                    "variant H1 needs even n ≥ 2, got n = {n}"
                )))
            }
        }
        CartanVariant::H2 => {
            if n % 2 == 0 && n >= 2 {
                Ok(n / 2)
            } else {
                Err(Error::InvalidInput(format!(
                    "variant H2 needs even n ≥ 2, got n = {n}"
                )))
            }
        }
    }
}

/// Start indices of the τ blocks in the `1+n` coordinates.
pub(crate) fn tau_positions(variant: CartanVariant, hyp_count: usize) -> Vec<usize> {
    match variant {
        CartanVariant::H0 | CartanVariant::H1 => (1..=hyp_count).map(|j| 2 * j).collect(),
        CartanVariant::H2 => (1..=hyp_count).map(|j| 2 * j - 1).collect(),
    }
}

/// Raw block assembly without constraint validation, so that scaled
/// (non-group) variants can be formed for the monotonicity checks.
pub(crate) fn hi_matrix_raw(
    variant: CartanVariant,
    circle: Option<(f64, f64)>,
    hyperbolas: &[(f64, f64)],
    n: usize,
) -> CMat {
    let mut m = CMat::zeros(1 + n, 1 + n);
    match variant {
        CartanVariant::H0 | CartanVariant::H1 => {
            let (a, b) = circle.expect("H0/H1 carry a circle block");
            m[(0, 0)] = C64::new(a, 0.0);
            m[(0, 1)] = C64::new(0.0, b);
            m[(1, 0)] = C64::new(0.0, b);
            m[(1, 1)] = C64::new(a, 0.0);
            if variant == CartanVariant::H1 {
                m[(n, n)] = C64::new(1.0, 0.0);
            }
        }
        CartanVariant::H2 => {
            m[(0, 0)] = C64::new(1.0, 0.0);
        }
    }
    for (&p, &(c, d)) in tau_positions(variant, hyperbolas.len()).iter().zip(hyperbolas) {
        m[(p, p)] = C64::new(c, 0.0);
        m[(p, p + 1)] = C64::new(0.0, -d);
        m[(p + 1, p)] = C64::new(0.0, d);
        m[(p + 1, p + 1)] = C64::new(c, 0.0);
    }
    m
}

/// The `H_I` element with the given parameters at dimension `n`.
pub fn cartan_element(params: &CartanParams, n: usize) -> Result<GroupElement> {
    let hyp_count = hyperbola_count(params.variant, n)?;
    if params.hyperbolas.len() != hyp_count {
        return Err(Error::InvalidInput(format!(
            "variant {} at n = {n} needs {hyp_count} hyperbolic pairs, got {}",
            params.variant.as_str(),
            params.hyperbolas.len()
        )));
    }
    let m = hi_matrix_raw(params.variant, params.circle, &params.hyperbolas, n);
    let g = GroupElement::validate(m, Tolerance::default());
    debug_assert!(g.is_valid(), "exact block construction must validate");
    Ok(g)
}

/// The `H_ℝ` element assembled from real blocks: a hyperbolic pair
/// `(c, d)` with `c² − d² = 1`, `c > 0` on the `(0,1)` coordinates
/// (absent for `H₂`) and rotation pairs `(a_j, b_j)` with
/// `a_j² + b_j² = 1` on the τ positions.
pub fn cartan_real_element(
    variant: CartanVariant,
    hyperbolic: Option<(f64, f64)>,
    rotations: &[(f64, f64)],
    n: usize,
) -> Result<GroupElement> {
    let block_count = hyperbola_count(variant, n)?;
    if rotations.len() != block_count {
        return Err(Error::InvalidInput(format!(
            "variant {} at n = {n} needs {block_count} rotation pairs, got {}",
            variant.as_str(),
            rotations.len()
        )));
    }
    let mut m = CMat::zeros(1 + n, 1 + n);
    match (variant, hyperbolic) {
        (CartanVariant::H2, Some(_)) => {
            return Err(Error::InvalidInput(
                "variant H2 has no hyperbolic block; pass None".into(),
            ))
        }
        (CartanVariant::H2, None) => {
            m[(0, 0)] = C64::new(1.0, 0.0);
        }
        (_, None) => {
            return Err(Error::InvalidInput(format!(
                "variant {} requires a hyperbolic pair",
                variant.as_str()
            )))
        }
        (v, Some((c, d))) => {
            let resid = (c * c - d * d - 1.0).abs();
            if !c.is_finite() || !d.is_finite() || resid > CARTAN_CONSTRAINT_RESIDUAL {
                return Err(Error::InvalidInput(format!(
                    "hyperbolic pair ({c}, {d}): |c²−d²−1| residual too large or non-finite"
                )));
            }
            if c <= 0.0 {
                return Err(Error::InvalidInput("hyperbolic pair needs c > 0".into()));
            }
            m[(0, 0)] = C64::new(c, 0.0);
            m[(0, 1)] = C64::new(d, 0.0);
            m[(1, 0)] = C64::new(d, 0.0);
            m[(1, 1)] = C64::new(c, 0.0);
            if v == CartanVariant::H1 {
                m[(n, n)] = C64::new(1.0, 0.0);
            }
        }
    }
    for (&p, &(a, b)) in tau_positions(variant, block_count).iter().zip(rotations) {
        let resid = (a * a + b * b - 1.0).abs();
        if !a.is_finite() || !b.is_finite() || resid > CARTAN_CONSTRAINT_RESIDUAL {
            return Err(Error::InvalidInput(format!(
                "rotation pair ({a}, {b}): |a²+b²−1| residual too large or non-finite"
            )));
        }
        m[(p, p)] = C64::new(a, 0.0);
        m[(p, p + 1)] = C64::new(-b, 0.0);
        m[(p + 1, p)] = C64::new(b, 0.0);
        m[(p + 1, p + 1)] = C64::new(a, 0.0);
    }
    let g = GroupElement::validate(m, Tolerance::default());
    debug_assert!(g.is_valid());
    Ok(g)
}

/// The component representative `ε` for even `n`: `−1` on the first
/// coordinate, a swap on coordinates `(1,2)`, identity on the rest.
/// `det ε = 1` and `ε₀₀ = −1`, so it lies outside the identity
/// component and flips the forward cone.
pub fn epsilon(n: usize) -> Result<GroupElement> {
    if n % 2 != 0 || n < 2 {
        return Err(Error::InvalidInput(format!(
            "ε exists for even n ≥ 2, got n = {n}"
        )));
    }
    let mut m = CMat::zeros(1 + n, 1 + n);
    m[(0, 0)] = C64::new(-1.0, 0.0);
    m[(1, 2)] = C64::new(1.0, 0.0);
    m[(2, 1)] = C64::new(1.0, 0.0);
    for i in 3..=n {
        m[(i, i)] = C64::new(1.0, 0.0);
    }
    Ok(GroupElement::validate(m, Tolerance::default()))
}

/// Random `H_I` parameters: circle angle and rapidities uniform in
/// `[−scale, scale]`.
pub fn random_cartan_params<R: Rng>(
    rng: &mut R,
    variant: CartanVariant,
    n: usize,
    scale: f64,
) -> Result<CartanParams> {
    let hyp_count = hyperbola_count(variant, n)?;
    let circle = match variant {
        CartanVariant::H2 => None,
        _ => {
            let theta: f64 = rng.random_range(-scale..=scale);
            Some((theta.cos(), theta.sin()))
        }
    };
    let hyperbolas: Vec<(f64, f64)> = (0..hyp_count)
        .map(|_| {
            let phi: f64 = rng.random_range(-scale..=scale);
            (phi.cosh(), phi.sinh())
        })
        .collect();
    CartanParams::new(variant, circle, hyperbolas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Classification;
    use crate::sample;

    #[test]
    fn identity_params_give_identity() {
        for (variant, n) in [
            (CartanVariant::H0, 1),
            (CartanVariant::H0, 3),
            (CartanVariant::H1, 4),
            (CartanVariant::H2, 4),
        ] {
            let params = CartanParams::identity_for(variant, n).unwrap();
            let g = cartan_element(&params, n).unwrap();
            assert_eq!(g.matrix(), &CMat::identity(1 + n, 1 + n), "{variant:?} n={n}");
            assert_eq!(g.classification(), Classification::RealSo0);
        }
    }

    #[test]
    fn h0_n1_quarter_turn() {
        let params = CartanParams::new(CartanVariant::H0, Some((0.0, 1.0)), vec![]).unwrap();
        let g = cartan_element(&params, 1).unwrap();
        let want = CMat::from_row_slice(2, 2, &[
            C64::new(0.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ]);
        assert_eq!(g.matrix(), &want);
        assert_eq!(g.classification(), Classification::ComplexSo);
    }

    #[test]
    fn parity_and_shape_rejection() {
        let p = CartanParams::new(CartanVariant::H0, Some((1.0, 0.0)), vec![(1.0, 0.0)]).unwrap();
        // p inhabits n = 3 only.
        assert!(cartan_element(&p, 3).is_ok());
        assert!(cartan_element(&p, 4).is_err());
        assert!(cartan_element(&p, 5).is_err());

        assert!(CartanParams::new(CartanVariant::H2, Some((1.0, 0.0)), vec![(1.0, 0.0)]).is_err());
        assert!(CartanParams::new(CartanVariant::H0, None, vec![]).is_err());
    }

    #[test]
    fn constraint_residual_rejection() {
        assert!(CartanParams::new(CartanVariant::H0, Some((1.0, 0.1)), vec![]).is_err());
        assert!(
            CartanParams::new(CartanVariant::H0, Some((1.0, 0.0)), vec![(1.1, 0.0)]).is_err()
        );
        // c < 0 rejected even on the hyperbola.
        assert!(
            CartanParams::new(CartanVariant::H0, Some((1.0, 0.0)), vec![(-1.0, 0.0)]).is_err()
        );
    }

    #[test]
    fn epsilon_matrix_and_classification() {
        let e = epsilon(2).unwrap();
        let want = CMat::from_row_slice(3, 3, &[
            C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0),
            C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0),
            C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0),
        ]);
        assert_eq!(e.matrix(), &want);
        assert_eq!(e.classification(), Classification::RealSoOther);

        let e4 = epsilon(4).unwrap();
        assert_eq!(e4.classification(), Classification::RealSoOther);
        assert!(epsilon(3).is_err());
    }

    #[test]
    fn same_variant_elements_commute() {
        let mut rng = sample::rng_for(02_2001);
        for (variant, n) in [
            (CartanVariant::H0, 3),
            (CartanVariant::H0, 5),
            (CartanVariant::H1, 4),
            (CartanVariant::H2, 4),
        ] {
            for _ in 0..25 {
                let p = random_cartan_params(&mut rng, variant, n, 1.0).unwrap();
                let q = random_cartan_params(&mut rng, variant, n, 1.0).unwrap();
                let a = cartan_element(&p, n).unwrap();
                let b = cartan_element(&q, n).unwrap();
                let ab = a.matrix() * b.matrix();
                let ba = b.matrix() * a.matrix();
                let err = (&ab - &ba).iter().map(|c| c.norm()).fold(0.0, f64::max);
                assert!(err <= 1e-10, "{variant:?}: commutator norm {err}");
            }
        }
    }

    #[test]
    fn real_elements_classify_as_real_so0() {
        let phi: f64 = 0.7;
        let g = cartan_real_element(
            CartanVariant::H0,
            Some((phi.cosh(), phi.sinh())),
            &[(0.6, 0.8)],
            3,
        )
        .unwrap();
        assert_eq!(g.classification(), Classification::RealSo0);

        let h = cartan_real_element(CartanVariant::H2, None, &[(0.6, 0.8), (1.0, 0.0)], 4).unwrap();
        assert_eq!(h.classification(), Classification::RealSo0);

        assert!(cartan_real_element(CartanVariant::H2, Some((1.0, 0.0)), &[(1.0, 0.0), (1.0, 0.0)], 4).is_err());
    }

    #[test]
    fn epsilon_flips_the_tube() {
        let tol = Tolerance::default();
        let mut rng = sample::rng_for(02_2002);
        for _ in 0..50 {
            let w = sample::sample_tube_point(&mut rng, 2, 3, 1.0, 1.0);
            let e = epsilon(2).unwrap();
            let ew = e.apply(&w).unwrap();
            for j in 0..ew.copies() {
                assert!(ew.matrix()[(0, j)].im < 0.0);
            }
            assert!(!crate::minkowski::in_future_tube(&ew, tol));
        }
    }
}
