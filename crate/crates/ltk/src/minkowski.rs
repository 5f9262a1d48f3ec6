//! Minkowski vectors, the Lorentz bilinear form, cone and tube
//! membership, the reverse Cauchy–Schwarz defect, and the boost that
//! normalizes a cone vector onto the `e₀` axis.
//!
//! Conventions used throughout the crate:
//!
//! * the form is bilinear, `x•y = x₀y₀ − x₁y₁ − … − xₙyₙ`, with no
//!   conjugation on either argument; `η(v) = v•v`;
//! * `J = diag(1, −1, …, −1)` is the Gram matrix of the form;
//! * the forward cone `C` and the tube `T^N` are open, so membership is
//!   strict: margins are compared against `tol.abs` and boundary points
//!   count as outside.

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Scalar and matrix aliases used throughout the public API.
pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

/// Absolute and relative comparison thresholds.
///
/// `abs` guards open-set membership and residual checks; `rel` scales
/// rank thresholds by the largest singular value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs > 0.0 && abs.is_finite() && rel > 0.0 && rel.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be finite and strictly positive, got abs={abs}, rel={rel}"
            )));
        }
        Ok(Tolerance { abs, rel })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-8 }
    }
}

/// A vector of `ℂ^{1+n}` with finite entries, indexed `0..=n` with the
/// timelike coordinate first.
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiVector {
    v: CVec,
}

impl MinkowskiVector {
    /// Wraps a complex `(1+n)`-vector, requiring `n ≥ 1` and finite entries.
    pub fn new(v: CVec) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} < 2 (need ambient dimension 1+n with n ≥ 1)",
                v.len()
            )));
        }
        if let Some(i) = v.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(format!("vector entry {i}")));
        }
        Ok(MinkowskiVector { v })
    }

    pub fn from_re_im(re: RVec, im: RVec) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch(format!(
                "re length {} vs im length {}",
                re.len(),
                im.len()
            )));
        }
        Self::new(CVec::from_fn(re.len(), |i, _| C64::new(re[i], im[i])))
    }

    pub fn real(re: RVec) -> Result<Self> {
        let n = re.len();
        Self::from_re_im(re, RVec::zeros(n))
    }

    /// The standard basis vector `e_k` of `ℝ^{1+n}`, `0 ≤ k ≤ n`.
    pub fn basis(k: usize, n: usize) -> Self {
        assert!(n >= 1 && k <= n, "basis index {k} out of range for n = {n}");
        let mut v = CVec::zeros(1 + n);
        v[k] = C64::new(1.0, 0.0);
        MinkowskiVector { v }
    }

    pub fn dim_n(&self) -> usize {
        self.v.len() - 1
    }

    pub fn vector(&self) -> &CVec {
        &self.v
    }

    pub fn re(&self) -> RVec {
        self.v.map(|c| c.re)
    }

    pub fn im(&self) -> RVec {
        self.v.map(|c| c.im)
    }

    /// Largest imaginary magnitude; zero for genuinely real vectors.
    pub fn im_max(&self) -> f64 {
        self.v.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: Tolerance) -> bool {
        self.im_max() <= tol.abs
    }
}

/// An ordered `N`-tuple of Minkowski vectors, stored as the columns of
/// a `(1+n)×N` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigPoint {
    m: CMat,
}

impl ConfigPoint {
    /// Wraps a `(1+n)×N` matrix, requiring `n ≥ 1`, `N ≥ 1`, finite entries.
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows < 2 (need 1+n with n ≥ 1)",
                m.nrows()
            )));
        }
        if m.ncols() == 0 {
            return Err(Error::InvalidInput("N = 0 columns (need N ≥ 1)".into()));
        }
        if let Some((i, j)) = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| !m[(i, j)].re.is_finite() || !m[(i, j)].im.is_finite())
        {
            return Err(Error::NonFinite(format!("matrix entry ({i}, {j})")));
        }
        Ok(ConfigPoint { m })
    }

    pub fn from_columns(cols: &[MinkowskiVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::InvalidInput("N = 0 columns (need N ≥ 1)".into()));
        }
        let n = cols[0].dim_n();
        if let Some(c) = cols.iter().find(|c| c.dim_n() != n) {
            return Err(Error::DimensionMismatch(format!(
                "column dimensions differ: {} vs {}",
                n,
                c.dim_n()
            )));
        }
        let m = CMat::from_fn(1 + n, cols.len(), |i, j| cols[j].vector()[i]);
        Ok(ConfigPoint { m })
    }

    pub fn dim_n(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn copies(&self) -> usize {
        self.m.ncols()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn column(&self, j: usize) -> MinkowskiVector {
        MinkowskiVector { v: self.m.column(j).into_owned() }
    }

    pub fn re_matrix(&self) -> RMat {
        self.m.map(|c| c.re)
    }

    pub fn im_matrix(&self) -> RMat {
        self.m.map(|c| c.im)
    }

    pub(crate) fn new_unchecked(m: CMat) -> Self {
        ConfigPoint { m }
    }
}

/// `x•y` over raw complex storage; callers guarantee equal lengths.
pub(crate) fn lp_raw(x: &CVec, y: &CVec) -> C64 {
    debug_assert_eq!(x.len(), y.len());
    let mut s = x[0] * y[0];
    for k in 1..x.len() {
        s -= x[k] * y[k];
    }
    s
}

/// `η` of a real vector.
pub(crate) fn eta_real(y: &RVec) -> f64 {
    let mut s = y[0] * y[0];
    for k in 1..y.len() {
        s -= y[k] * y[k];
    }
    s
}

pub(crate) fn lp_real(x: &RVec, y: &RVec) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut s = x[0] * y[0];
    for k in 1..x.len() {
        s -= x[k] * y[k];
    }
    s
}

/// Strict cone test on a raw real vector.
pub(crate) fn in_cone_real(y: &RVec, tol: Tolerance) -> bool {
    y[0] > tol.abs && eta_real(y) > tol.abs
}

/// The bilinear Lorentz product `x•w = x₀w₀ − x₁w₁ − … − xₙwₙ`.
///
/// Neither argument is conjugated; the product of complex vectors is a
/// complex scalar and `x•w = w•x` exactly.
pub fn lorentz_product(x: &MinkowskiVector, w: &MinkowskiVector) -> Result<C64> {
    if x.dim_n() != w.dim_n() {
        return Err(Error::DimensionMismatch(format!(
            "lorentz_product: n = {} vs n = {}",
            x.dim_n(),
            w.dim_n()
        )));
    }
    Ok(lp_raw(&x.v, &w.v))
}

/// The quadratic form `η(v) = v•v`.
pub fn eta(v: &MinkowskiVector) -> C64 {
    lp_raw(&v.v, &v.v)
}

/// Strict membership of a real vector in the open forward cone
/// `C = {η(y) > tol.abs, y₀ > tol.abs}`. Boundary points are outside.
///
/// Errors when the input carries an imaginary part above `tol.abs`.
pub fn in_forward_cone(y: &MinkowskiVector, tol: Tolerance) -> Result<bool> {
    if !y.is_real(tol) {
        return Err(Error::InvalidInput(format!(
            "in_forward_cone expects a real vector; imaginary magnitude {:.3e}",
            y.im_max()
        )));
    }
    Ok(in_cone_real(&y.re(), tol))
}

/// Membership of a configuration in the future tube `T^N`: the
/// imaginary part of every column lies in the open forward cone.
pub fn in_future_tube(z: &ConfigPoint, tol: Tolerance) -> bool {
    (0..z.copies()).all(|j| {
        let y = z.m.column(j).map(|c| c.im);
        in_cone_real(&y, tol)
    })
}

/// The reverse Cauchy–Schwarz defect `(x•y)² − η(x)η(y)` for real `x`
/// and real `y` with `η(y) > 0`.
///
/// On that domain the defect is nonnegative up to round-off, and it
/// vanishes exactly when `x` and `y` are linearly dependent.
pub fn cauchy_schwarz_defect(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<f64> {
    if x.dim_n() != y.dim_n() {
        return Err(Error::DimensionMismatch(format!(
            "cauchy_schwarz_defect: n = {} vs n = {}",
            x.dim_n(),
            y.dim_n()
        )));
    }
    let tol = Tolerance::default();
    if !x.is_real(tol) || !y.is_real(tol) {
        return Err(Error::InvalidInput(
            "cauchy_schwarz_defect expects real vectors".into(),
        ));
    }
    let (xr, yr) = (x.re(), y.re());
    let ey = eta_real(&yr);
    if ey <= 0.0 {
        return Err(Error::OutsideCone(format!(
            "cauchy_schwarz_defect needs η(y) > 0, got {ey:.6e}"
        )));
    }
    let xy = lp_real(&xr, &yr);
    Ok(xy * xy - eta_real(&xr) * ey)
}

/// The boost `g ∈ SO_ℝ(1,n)⁰` with `g·y = √η(y)·e₀` for a vector `y`
/// of the open forward cone.
///
/// Construction: with `y = (y₀, s)`, `r = √η(y)`, `γ = y₀/r`, and
/// `ŝ = s/‖s‖`, the matrix is the pure boost
/// `[[γ, −γβ ŝᵗ], [−γβ ŝ, I + (γ−1) ŝŝᵗ]]` with `γβ = ‖s‖/r`;
/// the identity when `s = 0`. Deterministic in `y`.
pub fn cone_boost(y: &MinkowskiVector, tol: Tolerance) -> Result<GroupElement> {
    if !in_forward_cone(y, tol)? {
        let yr = y.re();
        return Err(Error::OutsideCone(format!(
            "cone_boost needs y in the open cone; η = {:.6e}, y₀ = {:.6e}",
            eta_real(&yr),
            yr[0]
        )));
    }
    let yr = y.re();
    let n = y.dim_n();
    let s_norm_sq: f64 = (1..=n).map(|k| yr[k] * yr[k]).sum();
    let s_norm = s_norm_sq.sqrt();
    let r = (yr[0] - s_norm).max(0.0).sqrt() * (yr[0] + s_norm).sqrt();

    let mut g = RMat::identity(1 + n, 1 + n);
    if s_norm > 0.0 {
        let gamma = yr[0] / r;
        let gamma_beta = s_norm / r;
        let shat: Vec<f64> = (1..=n).map(|k| yr[k] / s_norm).collect();
        g[(0, 0)] = gamma;
        for k in 1..=n {
            g[(0, k)] = -gamma_beta * shat[k - 1];
            g[(k, 0)] = -gamma_beta * shat[k - 1];
            for l in 1..=n {
                g[(k, l)] = (if k == l { 1.0 } else { 0.0 }) + (gamma - 1.0) * shat[k - 1] * shat[l - 1];
            }
        }
    }
    let gc = g.map(|x| C64::new(x, 0.0));
    Ok(GroupElement::validate(gc, tol))
}
