//! Error type shared by every module, with the process exit code each
//! variant maps to on the command line.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry: {0}")]
    NonFinite(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vector outside the open forward cone: {0}")]
    OutsideCone(String),

    #[error("point outside the future tube: {0}")]
    OutsideTube(String),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("invalid algebra element: {0}")]
    InvalidAlgebraElement(String),

    #[error("matrix exponential argument {arg:.3e} exceeds cap {cap:.3e}")]
    ExpOverflow { arg: f64, cap: f64 },

    /// The radical/conjugate-radical pairing is numerically singular.
    /// On the tube the pairing is provably nondegenerate, so this only
    /// fires for inputs outside the guaranteed domain.
    #[error(
        "degenerate radical pairing (condition number {cond:.3e} > {limit:.3e}); \
         nondegeneracy is only guaranteed for points of the future tube"
    )]
    DegeneratePairing { cond: f64, limit: f64 },

    #[error("path precondition violated: {0}")]
    PathPrecondition(String),

    #[error("path normalization degenerate at t = {t}")]
    PathDegenerate { t: f64 },

    /// A path sample left Σ. Connectivity says this cannot happen for a
    /// conforming endpoint, so a hit is evidence of a contradiction and
    /// is reported loudly rather than skipped.
    #[error("path sample at t = {t} left the admissible set")]
    PathOutsideSigma { t: f64 },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code: 2 for usage/domain errors, 3 for numerical
    /// degeneracy escalations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegeneratePairing { .. }
            | Error::ExpOverflow { .. }
            | Error::PathDegenerate { .. }
            | Error::PathOutsideSigma { .. } => 3,
            _ => 2,
        }
    }
}
