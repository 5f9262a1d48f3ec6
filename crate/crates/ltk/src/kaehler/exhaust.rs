//! Boundedness of tube configurations with bounded invariants: the
//! explicit single-column bound chain, the two-column pair bound, and
//! the sampling audit that checks both against slice-normalized
//! representatives.
//!
//! For a tube column `z = x + iy` with `|η(z)| ≤ M` (observed on the
//! Gram diagonal), the reverse Cauchy–Schwarz inequality forces
//! `η(y)·(η(y) − M) ≤ M²`, hence `η(y) ≤ M·(1+√5)/2`; with
//! `|η(x) − η(y)| ≤ M` this chains to `η(x) ≤ η(y) + M`, and
//! `|x•y| ≤ M` comes from the imaginary part. For two columns the
//! polarization identity `2·x₁•x₂ = η(x₁+x₂) − η(x₁) − η(x₂)` gives
//! `|x₁•x₂| ≤ (3/2)·max{M₁, M₂}` where `M₁` bounds the per-column
//! quantities and `M₂` the same quantities of the summed column.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::minkowski::{eta_real, lp_real, RVec};
use crate::quotient::gram_quotient;
use crate::sample;

use super::{rho_unchecked, slice_normalize};

/// Single-column bounds implied by `|η(z)| ≤ M` on the tube.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExhaustionBounds {
    /// `η(Im z) ≤ M·(1+√5)/2`.
    pub eta_y_max: f64,
    /// `η(Re z) ≤ eta_y_max + M`.
    pub eta_x_max: f64,
    /// `|Re z • Im z| ≤ M`.
    pub xy_max: f64,
}

/// The bound chain for invariant bound `M ≥ 0`.
pub fn exhaustion_bounds(m: f64) -> Result<ExhaustionBounds> {
    if !(m >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "invariant bound must be ≥ 0, got {m}"
        )));
    }
    let eta_y_max = m * (1.0 + 5.0f64.sqrt()) / 2.0;
    Ok(ExhaustionBounds { eta_y_max, eta_x_max: eta_y_max + m, xy_max: m })
}

/// Pair bound `(3/2)·max{M₁, M₂}` for the products `x₁•x₂`, `y₁•y₂`.
pub fn pair_mixed_max(m1: f64, m2: f64) -> f64 {
    1.5 * m1.max(m2)
}

/// Audit parameters; `samples` is the half-stream size for the
/// doubling stability test.
#[derive(Clone, Copy, Debug)]
pub struct AuditOptions {
    pub n: usize,
    pub copies: usize,
    pub gram_bound: f64,
    pub r: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { n: 2, copies: 2, gram_bound: 10.0, r: 10.0, samples: 10_000, seed: 0 }
    }
}

/// Audit outcome; serializable for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub requested_samples: usize,
    /// Accepted by the `{‖Gram‖_max ≤ B, ρ ≤ r}` filter in the first
    /// `samples` draws / in all `2·samples` draws.
    pub accepted_half: usize,
    pub accepted_full: usize,
    /// Empirical supremum of the Euclidean norm of the slice-normalized
    /// representative over the half / full stream.
    pub sup_norm_half: Option<f64>,
    pub sup_norm_full: Option<f64>,
    /// Supremum moved by less than 20% when the sample count doubled.
    pub stable: bool,
    /// No sample passed the filter.
    pub empty: bool,
    /// Individual bound-chain inequalities checked / failed.
    pub checks_passed: u64,
    pub checks_failed: u64,
    /// First few failure descriptions (empty in a passing audit).
    pub failures: Vec<String>,
    /// Smallest normalized `η(y₁) = t²` seen; must stay ≥ 1/r.
    pub min_slice_eta: Option<f64>,
}

struct SampleEval {
    accepted: bool,
    norm: f64,
    slice_eta: f64,
    passed: u64,
    failures: Vec<String>,
}

/// Slack granted to every audited inequality, absorbing the fp error
/// of evaluating both sides.
const AUDIT_SLACK: f64 = 1e-9;

fn audit_one(idx: usize, opts: &AuditOptions) -> SampleEval {
    let mut rng = sample::rng_for(sample::suite_case_seed(opts.seed, "exhaustion-audit", idx as u64));
    let z = sample::sample_tube_point(&mut rng, opts.n, opts.copies, 1.0, 1.0);
    let gram = gram_quotient(&z);
    let gmax = gram.max_abs();
    let rho_z = rho_unchecked(&z);
    if !(gmax <= opts.gram_bound && rho_z <= opts.r) {
        return SampleEval { accepted: false, norm: 0.0, slice_eta: 0.0, passed: 0, failures: Vec::new() };
    }

    let (_, w) = slice_normalize(&z).expect("sampled points lie in the tube");
    let norm = w.matrix().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let bounds = exhaustion_bounds(opts.gram_bound).expect("bound is positive");

    let mut passed = 0u64;
    let mut failures = Vec::new();
    let fail = |desc: String, failures: &mut Vec<String>| {
        if failures.len() < 4 {
            failures.push(format!("sample {idx}: {desc}"));
        }
    };

    let cols: Vec<(RVec, RVec)> = (0..w.copies())
        .map(|j| {
            let col = w.column(j);
            (col.re(), col.im())
        })
        .collect();

    for (j, (x, y)) in cols.iter().enumerate() {
        let ey = eta_real(y);
        let ex = eta_real(x);
        let xy = lp_real(x, y);
        if ey <= bounds.eta_y_max + AUDIT_SLACK {
            passed += 1;
        } else {
            fail(format!("η(y_{j}) = {ey} exceeds {}", bounds.eta_y_max), &mut failures);
        }
        if ex <= bounds.eta_x_max + AUDIT_SLACK {
            passed += 1;
        } else {
            fail(format!("η(x_{j}) = {ex} exceeds {}", bounds.eta_x_max), &mut failures);
        }
        if xy.abs() <= bounds.xy_max + AUDIT_SLACK {
            passed += 1;
        } else {
            fail(format!("|x_{j}•y_{j}| = {} exceeds {}", xy.abs(), bounds.xy_max), &mut failures);
        }
    }

    for k in 0..cols.len() {
        for j in (k + 1)..cols.len() {
            let (xk, yk) = &cols[k];
            let (xj, yj) = &cols[j];
            let m1 = [
                eta_real(xk).abs(),
                eta_real(yk).abs(),
                lp_real(xk, yk).abs(),
                eta_real(xj).abs(),
                eta_real(yj).abs(),
                lp_real(xj, yj).abs(),
            ]
            .into_iter()
            .fold(0.0, f64::max);
            let xs = xk + xj;
            let ys = yk + yj;
            let m2 = eta_real(&xs).abs().max(eta_real(&ys).abs());
            let limit = pair_mixed_max(m1, m2) + AUDIT_SLACK;
            let xx = lp_real(xk, xj).abs();
            let yy = lp_real(yk, yj).abs();
            if xx <= limit {
                passed += 1;
            } else {
                fail(format!("|x_{k}•x_{j}| = {xx} exceeds pair bound {limit}"), &mut failures);
            }
            if yy <= limit {
                passed += 1;
            } else {
                fail(format!("|y_{k}•y_{j}| = {yy} exceeds pair bound {limit}"), &mut failures);
            }
        }
    }

    // Slice inequality: the normalized first column is t·e₀ with
    // t² = η(y₁) ≥ 1/r (each ρ term is at most the sum).
    let slice_eta = {
        let y1 = &cols[0].1;
        y1[0] * y1[0]
    };
    if slice_eta >= 1.0 / opts.r - AUDIT_SLACK {
        passed += 1;
    } else {
        fail(format!("slice η(y₁) = {slice_eta} below 1/r = {}", 1.0 / opts.r), &mut failures);
    }

    SampleEval { accepted: true, norm, slice_eta, passed, failures }
}

/// Sample the filtered set, slice-normalize, and check every bound.
///
/// Draws `2·samples` points in one deterministic stream; the reported
/// supremum over the first half against the full stream is the
/// doubling stability test.
pub fn exhaustion_audit(opts: &AuditOptions) -> Result<AuditReport> {
    if !(opts.r > 0.0) || !(opts.gram_bound > 0.0) {
        return Err(Error::InvalidInput(format!(
            "audit needs r > 0 and gram_bound > 0, got r = {}, gram_bound = {}",
            opts.r, opts.gram_bound
        )));
    }
    if opts.samples == 0 || opts.copies == 0 || opts.n == 0 {
        return Err(Error::InvalidInput(
            "audit needs samples ≥ 1, N ≥ 1, n ≥ 1".into(),
        ));
    }
    let total = 2 * opts.samples;
    let evals: Vec<SampleEval> = (0..total)
        .into_par_iter()
        .map(|idx| audit_one(idx, opts))
        .collect();

    let mut accepted_half = 0;
    let mut accepted_full = 0;
    let mut sup_half: Option<f64> = None;
    let mut sup_full: Option<f64> = None;
    let mut min_slice_eta: Option<f64> = None;
    let mut checks_passed = 0;
    let mut checks_failed = 0;
    let mut failures = Vec::new();
    for (idx, e) in evals.iter().enumerate() {
        if !e.accepted {
            continue;
        }
        accepted_full += 1;
        sup_full = Some(sup_full.map_or(e.norm, |s: f64| s.max(e.norm)));
        if idx < opts.samples {
            accepted_half += 1;
            sup_half = Some(sup_half.map_or(e.norm, |s: f64| s.max(e.norm)));
        }
        min_slice_eta = Some(min_slice_eta.map_or(e.slice_eta, |s: f64| s.min(e.slice_eta)));
        checks_passed += e.passed;
        checks_failed += e.failures.len() as u64;
        for f in &e.failures {
            if failures.len() < 8 {
                failures.push(f.clone());
            }
        }
    }

    let empty = accepted_full == 0;
    let stable = match (sup_half, sup_full) {
        (None, None) => true,
        (Some(h), Some(f)) => (f - h).abs() < 0.2 * f,
        _ => false,
    };

    Ok(AuditReport {
        requested_samples: opts.samples,
        accepted_half,
        accepted_full,
        sup_norm_half: sup_half,
        sup_norm_full: sup_full,
        stable,
        empty,
        checks_passed,
        checks_failed,
        failures,
        min_slice_eta,
    })
}
