//! The exhaustion function `ρ(z) = Σ_j 1/η(Im z_j)` on the future
//! tube, its gradient and Levi form, the moment map of the real-group
//! action, the ρ-minimizing flow, extended-tube membership
//! certification, the slice normalization, and boundedness audits.
//!
//! `ρ` is invariant under the real identity component and strictly
//! plurisubharmonic on `T^N`; the moment map collects its derivatives
//! along the imaginary group directions, `μ_ξ(z) = dρ(z)(iξz)`.

pub mod certify;
pub mod exhaust;
pub mod flow;

pub use certify::{membership_certify, CertifyOptions, MembershipStatus, MembershipVerdict};
pub use exhaust::{
    exhaustion_audit, exhaustion_bounds, pair_mixed_max, AuditOptions, AuditReport,
    ExhaustionBounds,
};
pub use flow::{minimize_rho_on_orbit, FlowOptions, FlowResult};

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::group::{algebra_basis, AlgebraElement, GroupElement};
use crate::minkowski::{
    cone_boost, eta_real, in_future_tube, lp_real, ConfigPoint, MinkowskiVector, RMat, Tolerance,
};

/// Tube precondition shared by the analytic operations.
fn require_tube(z: &ConfigPoint) -> Result<()> {
    if in_future_tube(z, Tolerance::default()) {
        Ok(())
    } else {
        Err(Error::OutsideTube(
            "operation needs every column's imaginary part strictly inside the forward cone"
                .into(),
        ))
    }
}

/// `ρ(z) = Σ_j 1/η(Im z_j)`; strictly positive on the tube.
pub fn rho(z: &ConfigPoint) -> Result<f64> {
    require_tube(z)?;
    Ok((0..z.copies())
        .map(|j| 1.0 / eta_real(&z.column(j).im()))
        .sum())
}

/// `∂ρ/∂y` as a real `(1+n)×N` matrix: column `j` is
/// `−2·η(y_j)^{−2}·J y_j`. `ρ` does not depend on the real parts.
pub fn rho_gradient(z: &ConfigPoint) -> Result<RMat> {
    require_tube(z)?;
    let rows = 1 + z.dim_n();
    let mut out = RMat::zeros(rows, z.copies());
    for j in 0..z.copies() {
        let y = z.column(j).im();
        let e = eta_real(&y);
        let c = -2.0 / (e * e);
        out[(0, j)] = c * y[0];
        for i in 1..rows {
            out[(i, j)] = -c * y[i];
        }
    }
    Ok(out)
}

/// Eigenvalues of all `N` blocks of the complex Hessian of `ρ`.
///
/// The Hessian is block-diagonal over the columns with symmetric
/// blocks `2η(y)^{−3}·(Jy)(Jy)ᵀ − ½η(y)^{−2}·J`; each block is
/// positive definite on the tube, which is the strict
/// plurisubharmonicity of `ρ`.
pub fn levi_spectrum(z: &ConfigPoint) -> Result<Vec<f64>> {
    require_tube(z)?;
    let rows = 1 + z.dim_n();
    let mut out = Vec::with_capacity(rows * z.copies());
    for j in 0..z.copies() {
        let y = z.column(j).im();
        let e = eta_real(&y);
        let mut jy = -y.clone();
        jy[0] = y[0];
        let mut block = RMat::zeros(rows, rows);
        let c1 = 2.0 / (e * e * e);
        let c2 = 0.5 / (e * e);
        for a in 0..rows {
            for b in 0..rows {
                block[(a, b)] = c1 * jy[a] * jy[b];
            }
        }
        block[(0, 0)] -= c2;
        for a in 1..rows {
            block[(a, a)] += c2;
        }
        let eig = SymmetricEigen::new(block);
        out.extend(eig.eigenvalues.iter().cloned());
    }
    Ok(out)
}

/// Smallest Levi eigenvalue over all blocks; positive on the tube.
pub fn levi_min_eigenvalue(z: &ConfigPoint) -> Result<f64> {
    Ok(levi_spectrum(z)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Moment-map coefficients against the fixed algebra basis.
#[derive(Clone, Debug)]
pub struct MomentValue {
    n: usize,
    coefficients: Vec<f64>,
}

impl MomentValue {
    pub fn dim_n(&self) -> usize {
        self.n
    }

    /// Coefficients in the fixed basis order (boosts, then rotations).
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn labels(&self) -> Vec<String> {
        crate::group::basis_labels(self.n)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// `μ_ξ(z) = Σ_j −2·η(y_j)^{−2}·(y_j • (ξ x_j))` for a real algebra
/// element `ξ`: the derivative of `t ↦ ρ(exp(itξ)·z)` at `t = 0`,
/// since the first-order variation of `Im z_j` along that curve is
/// `ξ x_j`.
pub fn moment_of(z: &ConfigPoint, xi: &AlgebraElement) -> Result<f64> {
    require_tube(z)?;
    if xi.dim_n() != z.dim_n() {
        return Err(Error::DimensionMismatch(format!(
            "algebra element has n = {}, point has n = {}",
            xi.dim_n(),
            z.dim_n()
        )));
    }
    let max_abs = xi.matrix().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let max_im = xi.matrix().iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if max_im > 1e-12 * max_abs.max(1.0) {
        return Err(Error::InvalidAlgebraElement(
            "moment coefficients are defined against real algebra elements".into(),
        ));
    }
    let xi_re = xi.matrix().map(|c| c.re);
    let mut total = 0.0;
    for j in 0..z.copies() {
        let col = z.column(j);
        let x = col.re();
        let y = col.im();
        let e = eta_real(&y);
        let v = &xi_re * x;
        total += -2.0 / (e * e) * lp_real(&y, &v);
    }
    Ok(total)
}

/// The full moment vector `(μ_{ξ_1}, …)` over the fixed basis.
pub fn moment_map(z: &ConfigPoint) -> Result<MomentValue> {
    require_tube(z)?;
    let n = z.dim_n();
    let coefficients = algebra_basis(n)
        .iter()
        .map(|xi| moment_of(z, xi))
        .collect::<Result<Vec<f64>>>()?;
    Ok(MomentValue { n, coefficients })
}

/// Normalize the first column's imaginary part onto the `e₀` ray by a
/// real boost: returns `(g, g·z)` with `Im(g·z)₁ = √η(Im z₁)·e₀`.
///
/// Since the boost is in the real identity component, `ρ` and the Gram
/// matrix are unchanged.
pub fn slice_normalize(z: &ConfigPoint) -> Result<(GroupElement, ConfigPoint)> {
    require_tube(z)?;
    let y1 = MinkowskiVector::real(z.column(0).im())?;
    let g = cone_boost(&y1, Tolerance::default())?;
    let gz = g.apply(z)?;
    Ok((g, gz))
}

/// Convenience: `η(Im z_j)` for every column.
pub(crate) fn eta_im_columns(z: &ConfigPoint) -> Vec<f64> {
    (0..z.copies()).map(|j| eta_real(&z.column(j).im())).collect()
}

/// `ρ` from precomputed `η(Im z_j)` values (callers that already
/// checked the tube).
pub(crate) fn rho_unchecked(z: &ConfigPoint) -> f64 {
    (0..z.copies())
        .map(|j| 1.0 / eta_real(&z.column(j).im()))
        .sum()
}
