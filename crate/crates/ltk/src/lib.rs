//! Numerical toolkit for Lorentz geometry on the future tube.
//!
//! The ambient space is `ℂ^{1+n}` carrying the bilinear Lorentz form
//! `x•y = x₀y₀ − x₁y₁ − … − xₙyₙ` (no conjugation on either argument).
//! A configuration is an `N`-tuple of such vectors, viewed as a
//! `(1+n)×N` complex matrix `Z`. The library provides, layer by layer:
//!
//! * [`minkowski`] — vectors and configurations, the form, the open
//!   forward cone `C = {η(y) > 0, y₀ > 0}`, the future tube
//!   `T^N = (ℝ^{1+n} + iC)^N`, the reverse Cauchy–Schwarz defect, and
//!   the boost normalizing a cone vector onto the `e₀` axis.
//! * [`group`] — validation and classification of complex/real Lorentz
//!   matrices, the Lie algebra basis, matrix exponentials, seeded random
//!   elements, and the block-diagonal Cartan subgroups `H₀`, `H₁`, `H₂`
//!   together with the component representative `ε`.
//! * [`quotient`] — the invariant Gram quotient `π(Z) = ᵗZJZ`, numeric
//!   rank with marginality warnings, the isotropic radical of the column
//!   span, the closed-orbit criterion, and the degeneration that scales
//!   the radical component to reach the closed orbit in an orbit closure.
//! * [`kaehler`] — the exhaustion `ρ(z) = Σ 1/η(Im z_j)`, its gradient
//!   and Levi form, the moment map, the ρ-minimizing flow on complex
//!   orbits, extended-tube membership certification, slice
//!   normalization, and the boundedness audit behind the exhaustion
//!   property.
//! * [`connect`] — Σ-membership tests and the normalized parameter
//!   paths that connect Cartan elements to the identity inside Σ,
//!   plus the monotonicity checks used by the connectedness argument.
//! * [`suites`] — named, seeded verification suites binding each
//!   mathematical claim to an executable check with a JSON report.
//! * [`cli`] — the `ltk` binary surface: JSON input/output for points,
//!   matrices, and group elements, one subcommand per operation, and
//!   `verify <suite>` running the suites with deterministic reports.
//!
//! All randomized code is deterministic per seed (ChaCha-based) and all
//! operations are pure; see each module for its numeric conventions.

pub mod cli;
pub mod connect;
pub mod error;
pub mod group;
pub mod kaehler;
pub mod minkowski;
pub mod quotient;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use minkowski::{ConfigPoint, MinkowskiVector, Tolerance};

/// Version string stamped into every JSON report.
pub const VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"));
