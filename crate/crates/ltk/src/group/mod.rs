//! Elements of the complex and real Lorentz groups: validation against
//! `ᵗgJg = J` and `det g = 1`, classification of the real forms, group
//! action on configurations, the Lie algebra with its exponential, and
//! the block-diagonal Cartan subgroups.

mod algebra;
mod cartan;

pub use algebra::{
    algebra_basis, algebra_combination, basis_labels, exp_algebra, exp_algebra_capped,
    random_group_element, random_group_element_rng, AlgebraElement, Realness, DEFAULT_EXP_CAP,
};
pub use cartan::{
    cartan_element, cartan_real_element, epsilon, random_cartan_params, CartanParams,
    CartanVariant, CARTAN_CONSTRAINT_RESIDUAL,
};

pub(crate) use algebra::expm;
pub(crate) use cartan::hi_matrix_raw;

use crate::error::{Error, Result};
use crate::minkowski::{C64, CMat, ConfigPoint, MinkowskiVector, Tolerance};

/// Where a matrix sits relative to the real form of the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Satisfies `ᵗgJg = J`, `det g = 1`, with genuinely complex entries.
    ComplexSo,
    /// Real entries, identity component: `g₀₀ ≥ 1` (preserves the cone).
    RealSo0,
    /// Real entries, `det g = 1`, but `g₀₀ ≤ −1` (swaps the cones).
    RealSoOther,
    /// Fails the isometry or determinant test.
    Invalid,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ComplexSo => "complex_SO",
            Classification::RealSo0 => "real_SO0",
            Classification::RealSoOther => "real_SO_other",
            Classification::Invalid => "invalid",
        }
    }
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub(crate) fn one_norm(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|c| c.norm()).sum())
        .fold(0.0, f64::max)
}

/// `‖ᵗgJg − J‖_max`.
pub(crate) fn isometry_residual(m: &CMat) -> f64 {
    let dim = m.nrows();
    let mut jg = m.clone();
    for i in 1..dim {
        for j in 0..dim {
            jg[(i, j)] = -jg[(i, j)];
        }
    }
    let mut prod = m.transpose() * jg;
    prod[(0, 0)] -= C64::new(1.0, 0.0);
    for i in 1..dim {
        prod[(i, i)] += C64::new(1.0, 0.0);
    }
    max_abs(&prod)
}

/// A validated (or explicitly invalid) Lorentz matrix together with its
/// classification and measured residuals.
#[derive(Clone, Debug)]
pub struct GroupElement {
    m: CMat,
    classification: Classification,
    residual: f64,
    det_error: f64,
}

impl GroupElement {
    /// Classifies a square complex matrix.
    ///
    /// Thresholds scale with the matrix: the isometry residual of an
    /// exactly Lorentz matrix computed in floating point grows like
    /// `‖g‖²·ε`, and the LU determinant error like the condition number
    /// `‖g‖²`, so both are compared against `tol.abs·max(1, ‖g‖²_max)`;
    /// the realness and `g₀₀` tests against `tol.abs·max(1, ‖g‖_max)`.
    /// Malformed input (non-square, fewer than 2 rows, non-finite) is
    /// classified `Invalid` with infinite residual; validation never
    /// errors.
    pub fn validate(m: CMat, tol: Tolerance) -> GroupElement {
        if m.nrows() != m.ncols()
            || m.nrows() < 2
            || m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return GroupElement {
                m,
                classification: Classification::Invalid,
                residual: f64::INFINITY,
                det_error: f64::INFINITY,
            };
        }
        let norm = max_abs(&m);
        let quad_scale = norm.powi(2).max(1.0);
        let lin_scale = norm.max(1.0);

        let residual = isometry_residual(&m);
        let det_error = (m.determinant() - C64::new(1.0, 0.0)).norm();

        let classification = if residual > tol.abs * quad_scale || det_error > tol.abs * quad_scale
        {
            Classification::Invalid
        } else {
            let im_max = m.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
            if im_max <= tol.abs * lin_scale {
                if m[(0, 0)].re >= 1.0 - tol.abs * lin_scale {
                    Classification::RealSo0
                } else {
                    Classification::RealSoOther
                }
            } else {
                Classification::ComplexSo
            }
        };
        GroupElement { m, classification, residual, det_error }
    }

    pub fn identity(n: usize) -> GroupElement {
        assert!(n >= 1);
        GroupElement {
            m: CMat::identity(1 + n, 1 + n),
            classification: Classification::RealSo0,
            residual: 0.0,
            det_error: 0.0,
        }
    }

    pub fn dim_n(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn is_valid(&self) -> bool {
        self.classification != Classification::Invalid
    }

    /// Measured `‖ᵗgJg − J‖_max`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Measured `|det g − 1|`.
    pub fn det_error(&self) -> f64 {
        self.det_error
    }

    /// Column-wise action `z_j ↦ g·z_j`.
    pub fn apply(&self, z: &ConfigPoint) -> Result<ConfigPoint> {
        if !self.is_valid() {
            return Err(Error::InvalidGroupElement(format!(
                "cannot apply: residual {:.3e}, det error {:.3e}",
                self.residual, self.det_error
            )));
        }
        if self.dim_n() != z.dim_n() {
            return Err(Error::DimensionMismatch(format!(
                "apply: group n = {}, point n = {}",
                self.dim_n(),
                z.dim_n()
            )));
        }
        ConfigPoint::new(&self.m * z.matrix())
    }

    pub fn apply_vector(&self, v: &MinkowskiVector) -> Result<MinkowskiVector> {
        if !self.is_valid() {
            return Err(Error::InvalidGroupElement("cannot apply".into()));
        }
        if self.dim_n() != v.dim_n() {
            return Err(Error::DimensionMismatch(format!(
                "apply_vector: group n = {}, vector n = {}",
                self.dim_n(),
                v.dim_n()
            )));
        }
        MinkowskiVector::new(&self.m * v.vector())
    }

    /// Product `self·other`, revalidated.
    pub fn compose(&self, other: &GroupElement, tol: Tolerance) -> Result<GroupElement> {
        if self.dim_n() != other.dim_n() {
            return Err(Error::DimensionMismatch(format!(
                "compose: n = {} vs n = {}",
                self.dim_n(),
                other.dim_n()
            )));
        }
        Ok(GroupElement::validate(&self.m * &other.m, tol))
    }

    /// The inverse `g⁻¹ = JᵗgJ`, exact for isometries of the form.
    pub fn inverse(&self, tol: Tolerance) -> Result<GroupElement> {
        if !self.is_valid() {
            return Err(Error::InvalidGroupElement("cannot invert".into()));
        }
        let dim = self.m.nrows();
        let mut inv = self.m.transpose();
        for i in 0..dim {
            for j in 0..dim {
                // (JᵗgJ)_{ij} = sign(i)·sign(j)·g_{ji} with sign(0) = +.
                let flip = (i == 0) != (j == 0);
                if flip {
                    inv[(i, j)] = -inv[(i, j)];
                }
            }
        }
        Ok(GroupElement::validate(inv, tol))
    }
}
