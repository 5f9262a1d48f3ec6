//! Named verification suites: each binds one mathematical claim to a
//! seeded batch check with a serializable report.
//!
//! Case `k` of suite `s` draws from an RNG seeded with
//! `suite_case_seed(master, s, k)`, so suites are deterministic per
//! master seed, independent of thread count, and any failing case can
//! be replayed in isolation. Failing checks embed their full inputs
//! (in the CLI JSON schema) in the report, bounded to the first few.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::io::{config_point_json, group_element_json};
use crate::connect::{cartan_path, hi_monotonicity_check, sigma_contains, MonotonicityGrid};
use crate::error::{Error, Result};
use crate::group::{
    algebra_basis, cartan_element, epsilon, exp_algebra, random_cartan_params,
    random_group_element_rng, CartanVariant, Realness,
};
use crate::kaehler::{
    exhaustion_audit, levi_min_eigenvalue, levi_spectrum, membership_certify,
    minimize_rho_on_orbit, moment_map, rho, AuditOptions, CertifyOptions, FlowOptions,
    MembershipStatus,
};
use crate::minkowski::{
    cauchy_schwarz_defect, eta_real, in_future_tube, lp_raw, C64, CMat, ConfigPoint,
    MinkowskiVector, Tolerance,
};
use crate::quotient::{
    gamma_scale, gram_quotient, is_orbit_closed, isotropic_split, rank_decision, radical_basis,
};
use crate::sample;

/// Every runnable suite, in canonical order.
pub const SUITE_NAMES: &[&str] = &[
    "cauchy-schwarz",
    "invariance",
    "radical-lemmas",
    "degeneration",
    "moment-fd",
    "levi",
    "reduction",
    "membership",
    "cartan-path",
    "exhaustion",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    CauchySchwarz,
    Invariance,
    RadicalLemmas,
    Degeneration,
    MomentFd,
    Levi,
    Reduction,
    Membership,
    CartanPath,
    Exhaustion,
    All,
}

impl SuiteId {
    pub fn parse(name: &str) -> Result<SuiteId> {
        Ok(match name {
            "cauchy-schwarz" => SuiteId::CauchySchwarz,
            "invariance" => SuiteId::Invariance,
            "radical-lemmas" => SuiteId::RadicalLemmas,
            "degeneration" => SuiteId::Degeneration,
            "moment-fd" => SuiteId::MomentFd,
            "levi" => SuiteId::Levi,
            "reduction" => SuiteId::Reduction,
            "membership" => SuiteId::Membership,
            "cartan-path" => SuiteId::CartanPath,
            "exhaustion" => SuiteId::Exhaustion,
            "all" => SuiteId::All,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown suite \"{other}\"; expected one of {}, all",
                    SUITE_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::CauchySchwarz => "cauchy-schwarz",
            SuiteId::Invariance => "invariance",
            SuiteId::RadicalLemmas => "radical-lemmas",
            SuiteId::Degeneration => "degeneration",
            SuiteId::MomentFd => "moment-fd",
            SuiteId::Levi => "levi",
            SuiteId::Reduction => "reduction",
            SuiteId::Membership => "membership",
            SuiteId::CartanPath => "cartan-path",
            SuiteId::Exhaustion => "exhaustion",
            SuiteId::All => "all",
        }
    }
}

/// Master seed, comparison tolerances, and an optional case-count
/// override for the suite's main loop (`None` = criterion default).
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub tol: Tolerance,
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, tol: Tolerance::default(), samples: None }
    }
}

/// One named check: a headline measurement against its bound, plus
/// replay dumps for the first few failing cases.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub measured: f64,
    pub bound: f64,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Value>,
}

impl CheckResult {
    fn new(
        name: &str,
        passed: bool,
        cases: usize,
        measured: f64,
        bound: f64,
        detail: String,
        failures: Vec<Value>,
    ) -> Self {
        CheckResult { name: name.into(), passed, cases, measured, bound, detail, failures }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    /// Marginal rank decisions in contexts that promise clean margins.
    pub warnings: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn assemble(suite: &str, seed: u64, warnings: usize, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.into(), seed, passed, warnings, checks }
    }
}

/// Run one suite (or all of them, in canonical order).
pub fn run(id: SuiteId, cfg: &SuiteConfig) -> Vec<SuiteReport> {
    match id {
        SuiteId::CauchySchwarz => vec![suite_cauchy_schwarz(cfg)],
        SuiteId::Invariance => vec![suite_invariance(cfg)],
        SuiteId::RadicalLemmas => vec![suite_radical_lemmas(cfg)],
        SuiteId::Degeneration => vec![suite_degeneration(cfg)],
        SuiteId::MomentFd => vec![suite_moment_fd(cfg)],
        SuiteId::Levi => vec![suite_levi(cfg)],
        SuiteId::Reduction => vec![suite_reduction(cfg)],
        SuiteId::Membership => vec![suite_membership(cfg)],
        SuiteId::CartanPath => vec![suite_cartan_path(cfg)],
        SuiteId::Exhaustion => vec![suite_exhaustion(cfg)],
        SuiteId::All => SUITE_NAMES
            .iter()
            .flat_map(|name| run(SuiteId::parse(name).expect("canonical name"), cfg))
            .collect(),
    }
}

fn push_failure(failures: &mut Vec<Value>, v: Value) {
    if failures.len() < 5 {
        failures.push(v);
    }
}

fn case_seed(cfg: &SuiteConfig, suite: &str, k: usize) -> u64 {
    sample::suite_case_seed(cfg.seed, suite, k as u64)
}

// ---------------------------------------------------------------- //
// cauchy-schwarz: (x•y)² ≥ η(x)η(y) for real x, y with η(y) > 0,
// with equality exactly on dependent pairs.
// ---------------------------------------------------------------- //

fn suite_cauchy_schwarz(cfg: &SuiteConfig) -> SuiteReport {
    let name = "cauchy-schwarz";
    let samples = cfg.samples.unwrap_or(100_000);

    let outcomes: Vec<(f64, Option<Value>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let n = 1 + (k % 4);
            let mut y = sample::sample_cone_vector(&mut rng, n, 2.0);
            if k % 2 == 1 {
                // η is even, so past-directed timelike vectors are in scope.
                y = MinkowskiVector::real(-y.re()).expect("finite");
            }
            let x = sample::sample_real_vector(&mut rng, n, 2.0);
            let defect = cauchy_schwarz_defect(&x, &y).expect("η(y) > 0 by construction");
            let dump = (defect < -1e-12).then(|| {
                json!({"case": k, "defect": defect, "x": x.re().as_slice(), "y": y.re().as_slice()})
            });
            (defect, dump)
        })
        .collect();
    let min_defect = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let mut failures = Vec::new();
    for (_, dump) in &outcomes {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c1 = CheckResult::new(
        "nonnegative-defect",
        min_defect >= -1e-12,
        samples,
        min_defect,
        -1e-12,
        format!("min defect {min_defect:.3e} over {samples} pairs with η(y) > 0"),
        failures,
    );

    let dep_cases = 1000;
    let dep_label = "cauchy-schwarz/dependent";
    let rels: Vec<(f64, Option<Value>)> = (0..dep_cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, dep_label, k));
            let n = 1 + (k % 4);
            let y = sample::sample_cone_vector(&mut rng, n, 2.0);
            let lambda: f64 =
                rng.random_range(0.2..=3.0) * if k % 2 == 0 { 1.0 } else { -1.0 };
            let x = MinkowskiVector::real(y.re() * lambda).expect("finite");
            let defect = cauchy_schwarz_defect(&x, &y).expect("η(y) > 0");
            let scale = x.re().norm().max(y.re().norm());
            let rel = defect.abs() / scale.powi(4);
            let dump = (rel > 1e-10).then(|| {
                json!({"case": k, "defect": defect, "lambda": lambda, "y": y.re().as_slice()})
            });
            (rel, dump)
        })
        .collect();
    let worst_rel = rels.iter().map(|o| o.0).fold(0.0, f64::max);
    let mut failures = Vec::new();
    for (_, dump) in &rels {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c2 = CheckResult::new(
        "dependent-pairs-vanish",
        worst_rel <= 1e-10,
        dep_cases,
        worst_rel,
        1e-10,
        format!("max |defect|/scale⁴ = {worst_rel:.3e} over {dep_cases} dependent pairs"),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2])
}

// ---------------------------------------------------------------- //
// invariance: the Gram quotient is constant on complex-group orbits
// and its numeric rank never exceeds min(1+n, N).
// ---------------------------------------------------------------- //

fn suite_invariance(cfg: &SuiteConfig) -> SuiteReport {
    let name = "invariance";
    let cases = cfg.samples.unwrap_or(1000);

    struct Out {
        ratio: f64,
        rank_ok: bool,
        dump: Option<Value>,
    }
    let outs: Vec<Out> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let n = 1 + (k % 4);
            let copies = 1 + (k % 5);
            let z = sample::sample_complex_point(&mut rng, n, copies, 1.5);
            let scale: f64 = rng.random_range(0.1..=1.0);
            let g = random_group_element_rng(&mut rng, n, scale, Realness::Complex);
            let gz = g.apply(&z).expect("dimensions agree");
            let gram_z = gram_quotient(&z);
            let gram_gz = gram_quotient(&gz);
            let diff = (gram_gz.entries() - gram_z.entries()).map(|c| c.norm()).max();
            let allowed = 1e-9 * gram_z.max_abs() + 1e-12;
            let ratio = diff / allowed;
            let dec = rank_decision(gram_z.entries(), cfg.tol);
            let rank_ok = dec.rank <= (1 + n).min(copies);
            let dump = (ratio > 1.0 || !rank_ok).then(|| {
                json!({
                    "case": k,
                    "gram_drift": diff,
                    "allowed": allowed,
                    "rank": dec.rank,
                    "z": config_point_json(&z),
                    "g": group_element_json(&g),
                })
            });
            Out { ratio, rank_ok, dump }
        })
        .collect();

    let worst_ratio = outs.iter().map(|o| o.ratio).fold(0.0, f64::max);
    let rank_violations = outs.iter().filter(|o| !o.rank_ok).count();
    let mut inv_failures = Vec::new();
    let mut rank_failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            if o.ratio > 1.0 {
                push_failure(&mut inv_failures, v.clone());
            }
            if !o.rank_ok {
                push_failure(&mut rank_failures, v.clone());
            }
        }
    }

    let c1 = CheckResult::new(
        "gram-invariance",
        worst_ratio <= 1.0,
        cases,
        worst_ratio,
        1.0,
        format!(
            "max ‖π(gz) − π(z)‖_max / (1e−9·‖π(z)‖_max + 1e−12) = {worst_ratio:.3e} over {cases} orbit pairs"
        ),
        inv_failures,
    );
    let c2 = CheckResult::new(
        "rank-bound",
        rank_violations == 0,
        cases,
        rank_violations as f64,
        0.0,
        format!("rank(π(z)) ≤ min(1+n, N) violated {rank_violations} times"),
        rank_failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2])
}

// ---------------------------------------------------------------- //
// radical-lemmas: planted radicals are recovered at their exact
// dimension with clean rank margins, the closure criterion agrees,
// and radical vectors are strictly negative in η(Im ·) and in the
// conjugate self-pairing.
// ---------------------------------------------------------------- //

fn suite_radical_lemmas(cfg: &SuiteConfig) -> SuiteReport {
    let name = "radical-lemmas";
    let cases = cfg.samples.unwrap_or(500);

    struct Out {
        size_ok: bool,
        closed_ok: bool,
        marginal: bool,
        worst_eta: f64,
        worst_pair: f64,
        dump: Option<Value>,
    }
    let outs: Vec<Out> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let d = k % 3;
            let n = 4;
            let copies = match d {
                0 => 1 + (k / 3) % 4,
                1 => 2 + (k / 3) % 3,
                _ => 3 + (k / 3) % 2,
            };
            let z = sample::planted_radical_point(&mut rng, n, d, copies);
            let rad = radical_basis(&z, cfg.tol);
            let closed = is_orbit_closed(&z, cfg.tol);
            let size_ok = rad.basis.len() == d;
            let closed_ok = closed.closed == (d == 0);
            let marginal = rad.marginal || closed.marginal;
            let mut worst_eta = f64::NEG_INFINITY;
            let mut worst_pair = f64::NEG_INFINITY;
            for r in &rad.basis {
                let im = r.map(|c| c.im);
                worst_eta = worst_eta.max(eta_real(&im));
                worst_pair = worst_pair.max(lp_raw(r, &r.map(|c| c.conj())).re);
            }
            let dump = (!size_ok || !closed_ok || marginal).then(|| {
                json!({
                    "case": k,
                    "planted_dim": d,
                    "recovered_dim": rad.basis.len(),
                    "closed": closed.closed,
                    "marginal": marginal,
                    "z": config_point_json(&z),
                })
            });
            Out { size_ok, closed_ok, marginal, worst_eta, worst_pair, dump }
        })
        .collect();

    let size_fail = outs.iter().filter(|o| !o.size_ok).count();
    let closed_fail = outs.iter().filter(|o| !o.closed_ok).count();
    let warnings = outs.iter().filter(|o| o.marginal).count();
    let worst_eta = outs.iter().map(|o| o.worst_eta).fold(f64::NEG_INFINITY, f64::max);
    let worst_pair = outs.iter().map(|o| o.worst_pair).fold(f64::NEG_INFINITY, f64::max);
    let mut failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            push_failure(&mut failures, v.clone());
        }
    }

    let c1 = CheckResult::new(
        "radical-size",
        size_fail == 0,
        cases,
        size_fail as f64,
        0.0,
        format!("recovered radical dimension mismatched the planted one {size_fail} times"),
        failures.clone(),
    );
    let c2 = CheckResult::new(
        "closed-agreement",
        closed_fail == 0,
        cases,
        closed_fail as f64,
        0.0,
        format!("closure criterion disagreed with the planted dimension {closed_fail} times"),
        failures.clone(),
    );
    let c3 = CheckResult::new(
        "zero-warnings",
        warnings == 0,
        cases,
        warnings as f64,
        0.0,
        format!("{warnings} marginal rank decisions on the planted family"),
        failures.clone(),
    );
    let c4 = CheckResult::new(
        "radical-vectors-negative",
        worst_eta < -1e-6 && worst_pair < -1e-6,
        cases,
        worst_eta.max(worst_pair),
        -1e-6,
        format!(
            "max η(Im r) = {worst_eta:.3e}, max r•r̄ = {worst_pair:.3e} over all unit radical vectors"
        ),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, warnings, vec![c1, c2, c3, c4])
}

// ---------------------------------------------------------------- //
// degeneration: the isotropic split preserves the Gram quotient,
// strictly lowers ρ, lands on a closed orbit, and its scaling curve
// stays inside the tube.
// ---------------------------------------------------------------- //

fn worked_degeneration_point() -> ConfigPoint {
    // Columns (2i·e₀ + ω, i·e₀) at n = 2 with ω = e₁ + i·e₂.
    let mut m = CMat::zeros(3, 2);
    m[(0, 0)] = C64::new(0.0, 2.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m[(2, 0)] = C64::new(0.0, 1.0);
    m[(0, 1)] = C64::new(0.0, 1.0);
    ConfigPoint::new(m).expect("finite by construction")
}

fn suite_degeneration(cfg: &SuiteConfig) -> SuiteReport {
    let name = "degeneration";
    let cases = cfg.samples.unwrap_or(500);

    let z0 = worked_degeneration_point();
    let split0 = isotropic_split(&z0, cfg.tol).expect("worked example pairing is unimodular");
    let rho_z0 = rho(&z0).expect("tube point");
    let rho_u0 = rho(split0.u_part()).expect("tube point");
    let worked_err = (rho_z0 - 4.0 / 3.0).abs().max((rho_u0 - 5.0 / 4.0).abs());
    let c0 = CheckResult::new(
        "worked-example",
        worked_err <= 1e-9,
        1,
        worked_err,
        1e-9,
        format!("ρ(z) = {rho_z0:.12} (want 4/3), ρ(u) = {rho_u0:.12} (want 5/4)"),
        Vec::new(),
    );

    struct Out {
        gram_rel: f64,
        rho_drop: f64,
        u_closed: bool,
        gamma_ok: bool,
        marginal: bool,
        dump: Option<Value>,
    }
    let outs: Vec<Out> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let d = 1 + (k % 2);
            let n = 4;
            let copies = match d {
                1 => 2 + (k / 2) % 3,
                _ => 3 + (k / 2) % 2,
            };
            let z = sample::planted_radical_point(&mut rng, n, d, copies);
            let split = isotropic_split(&z, cfg.tol).expect("planted pairing is unimodular");
            let u = split.u_part();
            let gram_z = gram_quotient(&z);
            let gram_u = gram_quotient(u);
            let gram_rel =
                (gram_u.entries() - gram_z.entries()).map(|c| c.norm()).max() / gram_z.max_abs();
            let rho_drop = rho(&z).expect("tube") - rho(u).expect("tube");
            let closed = is_orbit_closed(u, cfg.tol);
            let gamma_ok = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0].iter().all(|&t| {
                in_future_tube(&gamma_scale(&split, C64::new(t, 0.0)), cfg.tol)
            });
            let marginal = split.marginal() || closed.marginal;
            let failed = gram_rel > 1e-8 || rho_drop <= 0.0 || !closed.closed || !gamma_ok;
            let dump = (failed || marginal).then(|| {
                json!({
                    "case": k,
                    "planted_dim": d,
                    "gram_rel": gram_rel,
                    "rho_drop": rho_drop,
                    "u_closed": closed.closed,
                    "gamma_in_tube": gamma_ok,
                    "z": config_point_json(&z),
                })
            });
            Out { gram_rel, rho_drop, u_closed: closed.closed, gamma_ok, marginal, dump }
        })
        .collect();

    let worst_gram = outs.iter().map(|o| o.gram_rel).fold(0.0, f64::max);
    let min_drop = outs.iter().map(|o| o.rho_drop).fold(f64::INFINITY, f64::min);
    let closed_fail = outs.iter().filter(|o| !o.u_closed).count();
    let gamma_fail = outs.iter().filter(|o| !o.gamma_ok).count();
    let warnings = outs.iter().filter(|o| o.marginal).count();
    let mut failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            push_failure(&mut failures, v.clone());
        }
    }

    let c1 = CheckResult::new(
        "gram-preserved",
        worst_gram <= 1e-8,
        cases,
        worst_gram,
        1e-8,
        format!("max relative Gram drift of the split {worst_gram:.3e}"),
        failures.clone(),
    );
    let c2 = CheckResult::new(
        "rho-strict-decrease",
        min_drop > 0.0,
        cases,
        min_drop,
        0.0,
        format!("min ρ(z) − ρ(u) = {min_drop:.3e}; must be strictly positive"),
        failures.clone(),
    );
    let c3 = CheckResult::new(
        "u-closed",
        closed_fail == 0,
        cases,
        closed_fail as f64,
        0.0,
        format!("split base failed the closure criterion {closed_fail} times"),
        failures.clone(),
    );
    let c4 = CheckResult::new(
        "gamma-in-tube",
        gamma_fail == 0,
        cases,
        gamma_fail as f64,
        0.0,
        format!("scaling curve left the tube at some t ∈ {{0, ±0.5, ±1, ±2}} in {gamma_fail} cases"),
        failures.clone(),
    );
    let c5 = CheckResult::new(
        "zero-warnings",
        warnings == 0,
        cases,
        warnings as f64,
        0.0,
        format!("{warnings} marginal decisions during splits"),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, warnings, vec![c0, c1, c2, c3, c4, c5])
}

// ---------------------------------------------------------------- //
// moment-fd: the moment map matches central differences of ρ along
// every basis direction, and vanishes exactly at purely imaginary
// points.
// ---------------------------------------------------------------- //

fn suite_moment_fd(cfg: &SuiteConfig) -> SuiteReport {
    let name = "moment-fd";
    let points = cfg.samples.unwrap_or(200);
    const H: f64 = 1e-6;

    let outs: Vec<(f64, Option<Value>)> = (0..points)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let n = 1 + (k % 3);
            let copies = 1 + (k % 3);
            let z = sample::sample_tube_point_with_margin(&mut rng, n, copies, 1.0, 1.0, (0.5, 2.0));
            let mu = moment_map(&z).expect("tube point");
            let basis = algebra_basis(n);
            let mut worst = 0.0f64;
            for (a, xi) in basis.iter().enumerate() {
                let plus = exp_algebra(xi, C64::new(0.0, H))
                    .expect("small argument")
                    .apply(&z)
                    .expect("dimensions agree");
                let minus = exp_algebra(xi, C64::new(0.0, -H))
                    .expect("small argument")
                    .apply(&z)
                    .expect("dimensions agree");
                let fd = (rho(&plus).expect("tube") - rho(&minus).expect("tube")) / (2.0 * H);
                let analytic = mu.coefficients()[a];
                let rel = (analytic - fd).abs() / analytic.abs().max(1.0);
                worst = worst.max(rel);
            }
            let dump = (worst > 1e-6).then(|| {
                json!({"case": k, "worst_rel": worst, "z": config_point_json(&z)})
            });
            (worst, dump)
        })
        .collect();
    let worst_rel = outs.iter().map(|o| o.0).fold(0.0, f64::max);
    let mut failures = Vec::new();
    for (_, dump) in &outs {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c1 = CheckResult::new(
        "matches-finite-differences",
        worst_rel <= 1e-6,
        points,
        worst_rel,
        1e-6,
        format!("max relative gap to central differences (h = {H:.0e}) over the full basis: {worst_rel:.3e}"),
        failures,
    );

    let imag_label = "moment-fd/imaginary";
    let imag_cases = 100;
    let exact: Vec<(bool, Option<Value>)> = (0..imag_cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, imag_label, k));
            let n = 1 + (k % 3);
            let copies = 1 + (k % 3);
            let z = sample::sample_tube_point(&mut rng, n, copies, 1.0, 1.0);
            let zi = ConfigPoint::new(z.matrix().map(|c| C64::new(0.0, c.im)))
                .expect("imaginary part is finite");
            let mu = moment_map(&zi).expect("tube point");
            let ok = mu.coefficients().iter().all(|&c| c == 0.0);
            let dump = (!ok).then(|| {
                json!({"case": k, "mu": mu.coefficients(), "z": config_point_json(&zi)})
            });
            (ok, dump)
        })
        .collect();
    let exact_fail = exact.iter().filter(|o| !o.0).count();
    let mut failures = Vec::new();
    for (_, dump) in &exact {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c2 = CheckResult::new(
        "vanishes-at-imaginary-points",
        exact_fail == 0,
        imag_cases,
        exact_fail as f64,
        0.0,
        format!("μ had a nonzero coefficient at {exact_fail} purely imaginary points (must be exactly 0)"),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2])
}

// ---------------------------------------------------------------- //
// levi: the Levi form of ρ is strictly positive on the tube, with
// the known spectrum at i·e₀.
// ---------------------------------------------------------------- //

fn suite_levi(cfg: &SuiteConfig) -> SuiteReport {
    let name = "levi";
    let points = cfg.samples.unwrap_or(200);

    let outs: Vec<(f64, Option<Value>)> = (0..points)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let n = 1 + (k % 3);
            let copies = 1 + (k % 3);
            let z = sample::sample_tube_point(&mut rng, n, copies, 1.0, 1.0);
            let min_eig = levi_min_eigenvalue(&z).expect("tube point");
            let dump = (min_eig <= 0.0).then(|| {
                json!({"case": k, "min_eigenvalue": min_eig, "z": config_point_json(&z)})
            });
            (min_eig, dump)
        })
        .collect();
    let min_eig = outs.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let mut failures = Vec::new();
    for (_, dump) in &outs {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c1 = CheckResult::new(
        "strictly-positive",
        min_eig > 0.0,
        points,
        min_eig,
        0.0,
        format!("min Levi eigenvalue over {points} tube points: {min_eig:.3e}"),
        failures,
    );

    // At i·e₀ (n = 2, N = 1) the spectrum is {1/2, 1/2, 3/2}.
    let mut m = CMat::zeros(3, 1);
    m[(0, 0)] = C64::new(0.0, 1.0);
    let z = ConfigPoint::new(m).expect("finite");
    let mut spec = levi_spectrum(&z).expect("tube point");
    spec.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let want = [0.5, 0.5, 1.5];
    let worked_err = spec
        .iter()
        .zip(want.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let c2 = CheckResult::new(
        "worked-spectrum",
        spec.len() == 3 && worked_err <= 1e-10,
        1,
        worked_err,
        1e-10,
        format!("spectrum at i·e₀: {spec:?}, want {want:?}"),
        Vec::new(),
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2])
}

// ---------------------------------------------------------------- //
// reduction: the moment flow started anywhere on the orbit of a
// purely imaginary point converges and recovers its ρ value.
// ---------------------------------------------------------------- //

fn suite_reduction(cfg: &SuiteConfig) -> SuiteReport {
    let name = "reduction";
    let cases = cfg.samples.unwrap_or(50);

    struct Out {
        converged: bool,
        gap: f64,
        dump: Option<Value>,
    }
    let outs: Vec<Out> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, name, k));
            let n = 2 + (k % 2);
            let copies = 1 + (k % 2);
            let mut m = CMat::zeros(1 + n, copies);
            for j in 0..copies {
                let y = sample::sample_cone_vector_with_margin(&mut rng, n, 1.0, (0.5, 2.0));
                let yr = y.re();
                for i in 0..=n {
                    m[(i, j)] = C64::new(0.0, yr[i]);
                }
            }
            let z0 = ConfigPoint::new(m).expect("finite");
            let rho0 = rho(&z0).expect("imaginary cone columns lie in the tube");

            let mut scale = 0.5;
            let z = loop {
                let g = random_group_element_rng(&mut rng, n, scale, Realness::Complex);
                let moved = g.apply(&z0).expect("dimensions agree");
                if in_future_tube(&moved, cfg.tol) {
                    break moved;
                }
                scale *= 0.85;
            };

            let res = minimize_rho_on_orbit(&z, FlowOptions::default()).expect("tube point");
            let rho_final = rho(&res.final_point).expect("flow stays in the tube");
            let gap = (rho_final - rho0).abs();
            let dump = (!res.converged || gap > 1e-5).then(|| {
                json!({
                    "case": k,
                    "converged": res.converged,
                    "iterations": res.iterations,
                    "rho_base": rho0,
                    "rho_final": rho_final,
                    "diagnostic": res.diagnostic,
                    "z": config_point_json(&z),
                })
            });
            Out { converged: res.converged, gap, dump }
        })
        .collect();

    let conv_fail = outs.iter().filter(|o| !o.converged).count();
    let worst_gap = outs.iter().map(|o| o.gap).fold(0.0, f64::max);
    let mut failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            push_failure(&mut failures, v.clone());
        }
    }

    let c1 = CheckResult::new(
        "flow-converges",
        conv_fail == 0,
        cases,
        conv_fail as f64,
        0.0,
        format!("flow failed to reach ‖μ‖ ≤ 1e−6 in {conv_fail} of {cases} cases"),
        failures.clone(),
    );
    let c2 = CheckResult::new(
        "recovers-base-rho",
        worst_gap <= 1e-5,
        cases,
        worst_gap,
        1e-5,
        format!("max |ρ_final − ρ(z₀)| = {worst_gap:.3e}"),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2])
}

// ---------------------------------------------------------------- //
// membership: constructed extended-tube members certify at high
// rate, every witness maps the input into the tube, and points with
// no discovered witness come back unknown (never "non-member").
// ---------------------------------------------------------------- //

fn suite_membership(cfg: &SuiteConfig) -> SuiteReport {
    let name = "membership";
    let cases = cfg.samples.unwrap_or(200);

    struct Out {
        member: bool,
        witness_ok: bool,
        dump: Option<Value>,
    }
    let outs: Vec<Out> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let seed = case_seed(cfg, name, k);
            let mut rng = sample::rng_for(seed);
            let copies = 1 + (k % 2);
            let w = sample::sample_tube_point_with_margin(&mut rng, 2, copies, 1.0, 1.0, (0.4, 2.0));
            let g = random_group_element_rng(&mut rng, 2, 0.5, Realness::Complex);
            let z = g.apply(&w).expect("dimensions agree");
            let verdict =
                membership_certify(&z, CertifyOptions { seed, ..CertifyOptions::default() });
            let member = verdict.status == MembershipStatus::Member;
            let witness_ok = match (&verdict.status, &verdict.witness) {
                (MembershipStatus::Member, Some(wit)) => wit
                    .apply(&z)
                    .map(|img| in_future_tube(&img, cfg.tol))
                    .unwrap_or(false),
                (MembershipStatus::Member, None) => false,
                _ => true,
            };
            let dump = (!member || !witness_ok).then(|| {
                json!({
                    "case": k,
                    "status": if member { "member" } else { "unknown" },
                    "witness_ok": witness_ok,
                    "residual": verdict.residual,
                    "z": config_point_json(&z),
                })
            });
            Out { member, witness_ok, dump }
        })
        .collect();

    let member_rate = outs.iter().filter(|o| o.member).count() as f64 / cases as f64;
    let witness_fail = outs.iter().filter(|o| !o.witness_ok).count();
    let mut failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c1 = CheckResult::new(
        "member-rate",
        member_rate >= 0.95,
        cases,
        member_rate,
        0.95,
        format!("{:.1}% of constructed members certified", member_rate * 100.0),
        failures,
    );

    // z = 0 has empty column span; no group element moves it into the
    // open tube, so the verdict must be unknown.
    let zero = ConfigPoint::new(CMat::zeros(3, 2)).expect("finite");
    let zero_verdict = membership_certify(
        &zero,
        CertifyOptions { seed: case_seed(cfg, "membership/zero", 0), ..CertifyOptions::default() },
    );
    let c2 = CheckResult::new(
        "zero-point-unknown",
        zero_verdict.status == MembershipStatus::Unknown,
        1,
        zero_verdict.residual,
        0.0,
        format!("z = 0 verdict: {:?}, residual {:.3e}", zero_verdict.status, zero_verdict.residual),
        Vec::new(),
    );

    // Real configurations with spacelike columns: member verdicts are
    // legitimate only with a tube-checked witness; otherwise unknown.
    let space_label = "membership/spacelike";
    let space_cases = 50;
    let space: Vec<(bool, bool, Option<Value>)> = (0..space_cases)
        .into_par_iter()
        .map(|k| {
            let seed = case_seed(cfg, space_label, k);
            let mut rng = sample::rng_for(seed);
            let n = 2;
            let copies = 1 + (k % 2);
            let mut m = CMat::zeros(1 + n, copies);
            for j in 0..copies {
                loop {
                    let x = sample::sample_real_vector(&mut rng, n, 1.5);
                    if eta_real(&x.re()) < -0.1 {
                        let xr = x.re();
                        for i in 0..=n {
                            m[(i, j)] = C64::new(xr[i], 0.0);
                        }
                        break;
                    }
                }
            }
            let z = ConfigPoint::new(m).expect("finite");
            let verdict =
                membership_certify(&z, CertifyOptions { seed, ..CertifyOptions::default() });
            let member = verdict.status == MembershipStatus::Member;
            let ok = match (&verdict.status, &verdict.witness) {
                (MembershipStatus::Member, Some(wit)) => wit
                    .apply(&z)
                    .map(|img| in_future_tube(&img, cfg.tol))
                    .unwrap_or(false),
                (MembershipStatus::Member, None) => false,
                (MembershipStatus::Unknown, _) => true,
            };
            let dump = (!ok).then(|| {
                json!({"case": k, "member": member, "z": config_point_json(&z)})
            });
            (member, ok, dump)
        })
        .collect();
    let space_bad = space.iter().filter(|o| !o.1).count();
    let space_members = space.iter().filter(|o| o.0).count();
    let mut failures = Vec::new();
    for (_, _, dump) in &space {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c3 = CheckResult::new(
        "no-false-members",
        space_bad == 0 && witness_fail == 0,
        space_cases + cases,
        (space_bad + witness_fail) as f64,
        0.0,
        format!(
            "every member verdict carried a tube-checked witness ({space_members} of {space_cases} spacelike configurations certified with a genuine witness; the rest returned unknown)"
        ),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2, c3])
}

// ---------------------------------------------------------------- //
// cartan-path: conforming Cartan elements connect to the identity
// inside Σ(w), the ε-coset misses Σ entirely, and the block
// monotonicity grid reports no violations.
// ---------------------------------------------------------------- //

fn suite_cartan_path(cfg: &SuiteConfig) -> SuiteReport {
    let name = "cartan-path";
    let per_variant = cfg.samples.unwrap_or(100);
    let variants = [
        (CartanVariant::H0, 3usize),
        (CartanVariant::H1, 4),
        (CartanVariant::H2, 4),
    ];

    struct Out {
        path_ok: bool,
        endpoint_gap: f64,
        mono_violations: usize,
        dump: Option<Value>,
    }
    let total = variants.len() * per_variant;
    let outs: Vec<Out> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let (variant, n) = variants[idx / per_variant];
            let k = idx % per_variant;
            let label = format!("cartan-path/{}", variant.as_str());
            let seed = sample::suite_case_seed(cfg.seed, &label, k as u64);
            let mut rng = sample::rng_for(seed);
            let w = sample::sample_tube_point(&mut rng, n, 2, 0.5, 0.5);
            let mut scale = 0.3;
            let params = loop {
                let p = random_cartan_params(&mut rng, variant, n, scale).expect("valid variant");
                let h = cartan_element(&p, n).expect("valid parameters");
                if sigma_contains(&h, &w, cfg.tol).expect("dimensions agree") {
                    break p;
                }
                scale *= 0.85;
            };
            let h = cartan_element(&params, n).expect("valid parameters");

            let (path_ok, endpoint_gap) = match cartan_path(&params, &w, 64, cfg.tol) {
                Ok(path) => {
                    let last = path.samples().last().expect("sample_count ≥ 2");
                    let gap = (last.element.matrix() - h.matrix()).map(|c| c.norm()).max();
                    (true, gap)
                }
                Err(_) => (false, f64::INFINITY),
            };
            let mono = hi_monotonicity_check(&params, &w, seed, &MonotonicityGrid::default())
                .expect("conforming parameters");
            let dump = (!path_ok || endpoint_gap > 1e-9 || !mono.passed()).then(|| {
                json!({
                    "variant": variant.as_str(),
                    "case": k,
                    "path_ok": path_ok,
                    "endpoint_gap": endpoint_gap,
                    "monotonicity_violations": mono.violations.len(),
                    "w": config_point_json(&w),
                    "circle": params.circle(),
                    "hyperbolas": params.hyperbolas(),
                })
            });
            Out { path_ok, endpoint_gap, mono_violations: mono.violations.len(), dump }
        })
        .collect();

    let path_fail = outs.iter().filter(|o| !o.path_ok).count();
    let worst_gap = outs.iter().map(|o| o.endpoint_gap).fold(0.0, f64::max);
    let mono_total: usize = outs.iter().map(|o| o.mono_violations).sum();
    let mut failures = Vec::new();
    for o in &outs {
        if let Some(v) = &o.dump {
            push_failure(&mut failures, v.clone());
        }
    }

    let c1 = CheckResult::new(
        "path-containment",
        path_fail == 0,
        total,
        path_fail as f64,
        0.0,
        format!("{path_fail} of {total} conforming 64-point paths left Σ(w)"),
        failures.clone(),
    );
    let c2 = CheckResult::new(
        "endpoint-fidelity",
        worst_gap <= 1e-9,
        total,
        worst_gap,
        1e-9,
        format!("max ‖γ(1) − h‖_max = {worst_gap:.3e}"),
        failures.clone(),
    );
    let c3 = CheckResult::new(
        "monotonicity",
        mono_total == 0,
        total,
        mono_total as f64,
        0.0,
        format!("{mono_total} monotonicity grid violations"),
        failures,
    );

    // ε flips the sign of Im(·)₀ while H₂ fixes coordinate 0, so the
    // ε-coset misses Σ(w) for every tube point.
    let eps_label = "cartan-path/epsilon";
    let eps_cases = 100;
    let eps: Vec<(bool, Option<Value>)> = (0..eps_cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample::rng_for(case_seed(cfg, eps_label, k));
            let n = if k % 2 == 0 { 2 } else { 4 };
            let w = sample::sample_tube_point(&mut rng, n, 2, 0.5, 0.5);
            let params =
                random_cartan_params(&mut rng, CartanVariant::H2, n, 0.8).expect("valid variant");
            let h = cartan_element(&params, n).expect("valid parameters");
            let he = h.compose(&epsilon(n).expect("even n"), cfg.tol).expect("composable");
            let outside = !sigma_contains(&he, &w, cfg.tol).expect("dimensions agree");
            let dump = (!outside).then(|| {
                json!({"case": k, "w": config_point_json(&w), "h_epsilon": group_element_json(&he)})
            });
            (outside, dump)
        })
        .collect();
    let eps_fail = eps.iter().filter(|o| !o.0).count();
    let mut failures = Vec::new();
    for (_, dump) in &eps {
        if let Some(v) = dump {
            push_failure(&mut failures, v.clone());
        }
    }
    let c4 = CheckResult::new(
        "epsilon-coset-empty",
        eps_fail == 0,
        eps_cases,
        eps_fail as f64,
        0.0,
        format!("sigma_contains(h·ε, w) held {eps_fail} times; must never hold"),
        failures,
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2, c3, c4])
}

// ---------------------------------------------------------------- //
// exhaustion: the filtered, slice-normalized sample audit has a
// finite supremum stable under doubling and a clean bound chain.
// ---------------------------------------------------------------- //

fn suite_exhaustion(cfg: &SuiteConfig) -> SuiteReport {
    let name = "exhaustion";
    let samples = cfg.samples.unwrap_or(10_000);
    let opts = AuditOptions {
        n: 2,
        copies: 2,
        gram_bound: 10.0,
        r: 10.0,
        samples,
        seed: case_seed(cfg, name, 0),
    };
    let report = exhaustion_audit(&opts).expect("positive audit parameters");

    let sup_full = report.sup_norm_full.unwrap_or(f64::NAN);
    let sup_half = report.sup_norm_half.unwrap_or(f64::NAN);
    let c1 = CheckResult::new(
        "finite-supremum",
        !report.empty && sup_full.is_finite(),
        report.accepted_full,
        sup_full,
        f64::INFINITY,
        format!(
            "sup ‖normalized sample‖ = {sup_full:.6} over {} accepted of {} drawn",
            report.accepted_full,
            2 * samples
        ),
        Vec::new(),
    );
    let drift = if sup_full > 0.0 { (sup_full - sup_half).abs() / sup_full } else { 0.0 };
    let c2 = CheckResult::new(
        "doubling-stability",
        report.stable,
        report.accepted_full,
        drift,
        0.2,
        format!("supremum moved {:.2}% when samples doubled ({sup_half:.6} → {sup_full:.6})", drift * 100.0),
        Vec::new(),
    );
    let c3 = CheckResult::new(
        "bound-chain",
        report.checks_failed == 0,
        report.checks_passed as usize + report.checks_failed as usize,
        report.checks_failed as f64,
        0.0,
        format!(
            "{} individual bound inequalities checked, {} failed (single-column chain, 3/2 pair bound, slice floor)",
            report.checks_passed + report.checks_failed,
            report.checks_failed
        ),
        report.failures.iter().map(|s| Value::String(s.clone())).collect(),
    );

    SuiteReport::assemble(name, cfg.seed, 0, vec![c1, c2, c3])
}
