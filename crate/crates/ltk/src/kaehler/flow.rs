//! Gradient flow of `ρ` along the imaginary group directions.
//!
//! At each iterate the descent direction is the real algebra element
//! `ξ* = −Σ_a μ_a ξ_a` built from the moment coefficients against the
//! fixed basis; the step `z ← exp(i·s·ξ*)·z` strictly decreases `ρ`
//! for small `s` because `dρ(iξz) = μ_ξ(z)`, so
//! `d/ds ρ(exp(isξ*)z) = −‖μ‖²` at `s = 0`. Convergence to `‖μ‖ = 0`
//! lands on the minimizing real-group orbit when the complex orbit is
//! closed; for non-closed orbits the infimum is not attained and the
//! flow reports honestly instead of converging.

use crate::error::Result;
use crate::group::{algebra_combination, exp_algebra_capped, GroupElement, DEFAULT_EXP_CAP};
use crate::minkowski::{in_future_tube, C64, ConfigPoint, Tolerance};

use super::{moment_map, require_tube, rho_unchecked};

/// Knobs of the minimizing flow; the defaults are the contract.
#[derive(Clone, Copy, Debug)]
pub struct FlowOptions {
    /// Initial line-search step.
    pub step0: f64,
    /// Convergence threshold on the moment-vector norm.
    pub mu_tol: f64,
    /// Iteration budget.
    pub max_iter: usize,
    /// Step below which the line search is declared stalled.
    pub min_step: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { step0: 0.1, mu_tol: 1e-6, max_iter: 5000, min_step: 1e-14 }
    }
}

/// Outcome of the flow.
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub final_point: ConfigPoint,
    /// Ordered product of all accepted steps: `final = g·start`.
    pub accumulated_group: GroupElement,
    pub converged: bool,
    pub iterations: usize,
    /// `(iteration, ρ, ‖μ‖)` per iteration, ρ strictly decreasing.
    pub trace: Vec<(usize, f64, f64)>,
    /// Present when the flow stopped without converging.
    pub diagnostic: Option<String>,
}

/// Minimize `ρ` over the complex orbit of `z` by moment descent.
pub fn minimize_rho_on_orbit(z: &ConfigPoint, opts: FlowOptions) -> Result<FlowResult> {
    require_tube(z)?;
    let tol = Tolerance::default();
    let n = z.dim_n();
    let mut current = z.clone();
    let mut acc = GroupElement::identity(n);
    let mut trace = Vec::new();
    let mut diagnostic = None;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..=opts.max_iter {
        let mu = moment_map(&current)?;
        let mu_norm = mu.norm();
        let rho_cur = rho_unchecked(&current);
        trace.push((iter, rho_cur, mu_norm));
        iterations = iter;
        if mu_norm <= opts.mu_tol {
            converged = true;
            break;
        }
        if iter == opts.max_iter {
            diagnostic = Some(format!(
                "iteration budget exhausted with ‖μ‖ = {mu_norm:.3e} > {:.3e}",
                opts.mu_tol
            ));
            break;
        }

        let coeffs: Vec<C64> = mu
            .coefficients()
            .iter()
            .map(|&a| C64::new(-a, 0.0))
            .collect();
        let xi = algebra_combination(&coeffs, n);
        let xi_scale = xi
            .matrix()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(1e-300);

        let mut s = opts.step0;
        // Keep the exponential argument inside the overflow cap.
        while s * xi_scale * (1 + n) as f64 > DEFAULT_EXP_CAP {
            s *= 0.5;
        }
        let mut accepted = false;
        while s >= opts.min_step {
            let g = exp_algebra_capped(&xi, C64::new(0.0, s), DEFAULT_EXP_CAP)?;
            let candidate = g.apply(&current)?;
            if in_future_tube(&candidate, tol) && rho_unchecked(&candidate) < rho_cur {
                current = candidate;
                acc = g.compose(&acc, tol)?;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            diagnostic = Some(format!(
                "line search stalled at iteration {iter}: no ρ decrease above step {:.1e} \
                 (‖μ‖ = {mu_norm:.3e})",
                opts.min_step
            ));
            break;
        }
    }

    Ok(FlowResult {
        final_point: current,
        accumulated_group: acc,
        converged,
        iterations,
        trace,
        diagnostic,
    })
}
