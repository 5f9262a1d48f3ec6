//! Command-line dispatch: one subcommand per library operation plus
//! the `verify` suite runner.
//!
//! Exit codes: 0 success (all checks passed), 1 verification failure,
//! 2 usage or input error, 3 numerical degeneracy (degenerate pairing,
//! overflowing exponential, degenerate path normalization, or a
//! passing `verify` run that raised marginal-rank warnings).
//!
//! Every command prints a single JSON report to standard output (or
//! `--out`), deterministic for fixed (command, options, seed) except
//! the `timestamp` field. Numbers use shortest-roundtrip form, which
//! preserves every finite double exactly (up to 17 significant
//! digits). `LTK_THREADS` caps the worker pool.

pub mod io;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::connect::cartan_path;
use crate::error::{Error, Result};
use crate::group::{CartanParams, CartanVariant};
use crate::kaehler::{
    eta_im_columns, exhaustion_audit, exhaustion_bounds, levi_spectrum, membership_certify,
    minimize_rho_on_orbit, moment_map, pair_mixed_max, rho, slice_normalize, AuditOptions,
    CertifyOptions, FlowOptions, MembershipStatus,
};
use crate::minkowski::{
    eta, in_forward_cone, in_future_tube, lorentz_product, ConfigPoint, Tolerance,
};
use crate::quotient::{
    gram_quotient, is_orbit_closed, isotropic_split, radical_basis, rank_decision, RankDecision,
};
use crate::suites::{self, SuiteConfig, SuiteId};

#[derive(Parser)]
#[command(
    name = "ltk",
    version = crate::VERSION,
    about = "Lorentz tube kit: invariants, orbits, and verification suites for the \
             complexified Lorentz group acting on tuples of Minkowski vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Master seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Absolute tolerance (cone/tube strictness, validation residuals).
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    /// Relative tolerance (rank thresholds).
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Case-count override: suite cases for `verify`, draw count for
    /// `audit-exhaustion`, sample count for `path` (default 64).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Spatial dimension n for generating commands (default 2).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Number of vector copies N for generating commands (default 2).
    #[arg(long = "N", global = true)]
    copies: Option<usize>,
    /// Input JSON file, or `-` for standard input.
    #[arg(long = "in", global = true, value_name = "FILE|-", default_value = "-")]
    input: String,
    /// Report destination, or `-` for standard output.
    #[arg(long, global = true, value_name = "FILE|-", default_value = "-")]
    out: String,
    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// η(z_j) for every column of the input point.
    Eta,
    /// Lorentz product z₁•z₂ of a two-column input point.
    Product,
    /// Open-forward-cone test per column (input must be real).
    Cone,
    /// Future-tube test plus η(Im z_j) per column.
    Tube,
    /// Gram quotient: all pairwise Lorentz products of the columns.
    Quotient,
    /// Rank decisions for the column span and the Gram quotient.
    Rank,
    /// Radical of the column span (span ∩ span-orthocomplement).
    Radical,
    /// Closed-orbit criterion: span rank equals Gram rank.
    Closed,
    /// Isotropic split z = u + ω with ρ before and after.
    Degenerate,
    /// Exhaustion value ρ(z) = Σ_j 1/η(Im z_j).
    Rho,
    /// Levi spectrum of the exhaustion at the input point.
    Levi,
    /// Moment map coefficients over the real algebra basis.
    Moment,
    /// Moment-descent flow minimizing ρ over the complex orbit.
    Minimize(MinimizeArgs),
    /// Extended-tube membership search with witness verification.
    Certify(CertifyArgs),
    /// Boost the first column's imaginary part onto the time axis.
    Slice,
    /// Exhaustion bound chain for a Gram bound M.
    Bounds(BoundsArgs),
    /// Path from the identity to a Cartan element inside the
    /// admissible set. Input: {"w", "variant", "circle", "hyperbolas"}.
    Path,
    /// Randomized audit of the exhaustion bounds with a doubling check.
    AuditExhaustion(AuditArgs),
    /// Run a named verification suite, or `all`.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MinimizeArgs {
    /// Iteration cap.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Initial step size.
    #[arg(long)]
    step0: Option<f64>,
    /// Convergence threshold on ‖μ‖.
    #[arg(long)]
    mu_tol: Option<f64>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Number of random starts.
    #[arg(long)]
    starts: Option<usize>,
    /// Iteration cap per start.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Required tube clearance of a witness image.
    #[arg(long)]
    margin: Option<f64>,
    /// Initial step size.
    #[arg(long)]
    step0: Option<f64>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Gram bound M.
    #[arg(long, default_value_t = 10.0)]
    gram_bound: f64,
}

#[derive(Args)]
struct AuditArgs {
    /// Gram filter bound.
    #[arg(long, default_value_t = 10.0)]
    gram_bound: f64,
    /// Sublevel radius of the ρ filter.
    #[arg(long, default_value_t = 10.0)]
    r: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// cauchy-schwarz, invariance, radical-lemmas, degeneration,
    /// moment-fd, levi, reduction, membership, cartan-path,
    /// exhaustion, or all.
    suite: String,
}

/// Entry point for the binary: parse `std::env::args` and dispatch.
pub fn run() -> i32 {
    run_from(std::env::args())
}

/// Parse the given argument list and dispatch; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let is_error = e.use_stderr();
            let _ = e.print();
            return if is_error { 2 } else { 0 };
        }
    };
    init_thread_pool();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("LTK_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                // Fails when a pool already exists (e.g. under tests);
                // the existing pool then stays in effect.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn read_input_value(path: &str) -> Result<Value> {
    let text = if path == "-" {
        use std::io::Read as _;
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn read_point(path: &str) -> Result<ConfigPoint> {
    io::parse_config_point(&read_input_value(path)?)
}

fn write_output(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        println!("{text}");
    } else {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn rank_json(d: &RankDecision) -> Value {
    json!({
        "rank": d.rank,
        "threshold": d.threshold,
        // null = one side empty, i.e. the gap is unbounded.
        "gap_ratio": d.gap_ratio.is_finite().then_some(d.gap_ratio),
        "marginal": d.marginal,
    })
}

fn pair_from(v: &Value, name: &str) -> Result<(f64, f64)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": expected a pair [a, b]")))?;
    let a = arr[0]
        .as_f64()
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": entries must be numbers")))?;
    let b = arr[1]
        .as_f64()
        .ok_or_else(|| Error::InvalidInput(format!("field \"{name}\": entries must be numbers")))?;
    Ok((a, b))
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let c = &cli.common;
    let mut tol = Tolerance::default();
    if let Some(abs) = c.tol_abs {
        tol = Tolerance { abs, ..tol };
    }
    if let Some(rel) = c.tol_rel {
        tol = Tolerance { rel, ..tol };
    }
    if !(tol.abs > 0.0) || !(tol.rel > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerances must be positive, got abs = {}, rel = {}",
            tol.abs, tol.rel
        )));
    }

    let (command, seed, body, code): (&str, Option<u64>, Value, i32) = match &cli.command {
        Command::Eta => {
            let z = read_point(&c.input)?;
            let vals: Vec<_> = (0..z.copies()).map(|j| eta(&z.column(j))).collect();
            let body = json!({
                "n": z.dim_n(),
                "N": z.copies(),
                "eta_re": vals.iter().map(|v| v.re).collect::<Vec<_>>(),
                "eta_im": vals.iter().map(|v| v.im).collect::<Vec<_>>(),
            });
            ("eta", None, body, 0)
        }
        Command::Product => {
            let z = read_point(&c.input)?;
            if z.copies() != 2 {
                return Err(Error::InvalidInput(format!(
                    "product needs exactly N = 2 columns, got N = {}",
                    z.copies()
                )));
            }
            let p = lorentz_product(&z.column(0), &z.column(1))?;
            ("product", None, json!({"product_re": p.re, "product_im": p.im}), 0)
        }
        Command::Cone => {
            let z = read_point(&c.input)?;
            let mut flags = Vec::with_capacity(z.copies());
            for j in 0..z.copies() {
                flags.push(in_forward_cone(&z.column(j), tol)?);
            }
            let all = flags.iter().all(|&b| b);
            ("cone", None, json!({"in_cone": flags, "all": all}), 0)
        }
        Command::Tube => {
            let z = read_point(&c.input)?;
            let etas = eta_im_columns(&z);
            ("tube", None, json!({"in_tube": in_future_tube(&z, tol), "eta_im": etas}), 0)
        }
        Command::Quotient => {
            let z = read_point(&c.input)?;
            let gram = gram_quotient(&z);
            let re = gram.entries().map(|v| v.re);
            let im = gram.entries().map(|v| v.im);
            let body = json!({
                "N": z.copies(),
                "gram_re": io::rows_json(&re),
                "gram_im": io::rows_json(&im),
                "max_abs": gram.max_abs(),
            });
            ("quotient", None, body, 0)
        }
        Command::Rank => {
            let z = read_point(&c.input)?;
            let span = rank_decision(z.matrix(), tol);
            let gram = rank_decision(gram_quotient(&z).entries(), tol);
            ("rank", None, json!({"span": rank_json(&span), "gram": rank_json(&gram)}), 0)
        }
        Command::Radical => {
            let z = read_point(&c.input)?;
            let rad = radical_basis(&z, tol);
            let basis_re: Vec<Vec<f64>> =
                rad.basis.iter().map(|v| v.iter().map(|e| e.re).collect()).collect();
            let basis_im: Vec<Vec<f64>> =
                rad.basis.iter().map(|v| v.iter().map(|e| e.im).collect()).collect();
            let body = json!({
                "dim": rad.basis.len(),
                "span": rad.span_dim,
                "gram_rank": rad.gram_rank,
                "marginal": rad.marginal,
                "basis_re": basis_re,
                "basis_im": basis_im,
            });
            ("radical", None, body, 0)
        }
        Command::Closed => {
            let z = read_point(&c.input)?;
            let chk = is_orbit_closed(&z, tol);
            let body = json!({
                "closed": chk.closed,
                "span": chk.span_dim,
                "gram_rank": chk.gram_rank,
                "marginal": chk.marginal,
            });
            ("closed", None, body, 0)
        }
        Command::Degenerate => {
            let z = read_point(&c.input)?;
            let split = isotropic_split(&z, tol)?;
            let rho_z = rho(&z)?;
            let rho_u = rho(split.u_part())?;
            let drift = (gram_quotient(split.u_part()).entries()
                - gram_quotient(&z).entries())
            .map(|v| v.norm())
            .max();
            let body = json!({
                "radical_dim": split.radical().len(),
                "pairing_condition": split.pairing_condition(),
                "marginal": split.marginal(),
                "rho_z": rho_z,
                "rho_u": rho_u,
                "gram_drift": drift,
                "u": io::config_point_json(split.u_part()),
                "omega": io::config_point_json(split.omega_part()),
            });
            ("degenerate", None, body, 0)
        }
        Command::Rho => {
            let z = read_point(&c.input)?;
            ("rho", None, json!({"rho": rho(&z)?}), 0)
        }
        Command::Levi => {
            let z = read_point(&c.input)?;
            let mut spec = levi_spectrum(&z)?;
            spec.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
            let min = spec.first().copied().unwrap_or(f64::NAN);
            ("levi", None, json!({"min_eigenvalue": min, "spectrum": spec}), 0)
        }
        Command::Moment => {
            let z = read_point(&c.input)?;
            let mu = moment_map(&z)?;
            ("moment", None, json!({"norm": mu.norm(), "coefficients": mu.coefficients()}), 0)
        }
        Command::Minimize(a) => {
            let z = read_point(&c.input)?;
            let mut opts = FlowOptions::default();
            if let Some(v) = a.max_iter {
                opts.max_iter = v;
            }
            if let Some(v) = a.step0 {
                opts.step0 = v;
            }
            if let Some(v) = a.mu_tol {
                opts.mu_tol = v;
            }
            let rho_initial = rho(&z)?;
            let res = minimize_rho_on_orbit(&z, opts)?;
            let body = json!({
                "converged": res.converged,
                "iterations": res.iterations,
                "rho_initial": rho_initial,
                "rho_final": rho(&res.final_point)?,
                "mu_norm": res.trace.last().map(|t| t.2),
                "diagnostic": res.diagnostic,
                "final": io::config_point_json(&res.final_point),
                "group": io::group_element_json(&res.accumulated_group),
            });
            ("minimize", None, body, 0)
        }
        Command::Certify(a) => {
            let z = read_point(&c.input)?;
            let mut opts = CertifyOptions { seed: c.seed, ..CertifyOptions::default() };
            if let Some(v) = a.starts {
                opts.starts = v;
            }
            if let Some(v) = a.max_iter {
                opts.max_iter = v;
            }
            if let Some(v) = a.margin {
                opts.margin = v;
            }
            if let Some(v) = a.step0 {
                opts.step0 = v;
            }
            let verdict = membership_certify(&z, opts);
            let status = match verdict.status {
                MembershipStatus::Member => "member",
                MembershipStatus::Unknown => "unknown",
            };
            let body = json!({
                "status": status,
                "residual": verdict.residual,
                "witness": verdict.witness.as_ref().map(io::group_element_json),
            });
            ("certify", Some(c.seed), body, 0)
        }
        Command::Slice => {
            let z = read_point(&c.input)?;
            let (g, gz) = slice_normalize(&z)?;
            let etas = eta_im_columns(&gz);
            let body = json!({
                "boost": io::group_element_json(&g),
                "point": io::config_point_json(&gz),
                "eta_im": etas,
            });
            ("slice", None, body, 0)
        }
        Command::Bounds(a) => {
            let b = exhaustion_bounds(a.gram_bound)?;
            let body = json!({
                "gram_bound": a.gram_bound,
                "eta_y_max": b.eta_y_max,
                "eta_x_max": b.eta_x_max,
                "xy_max": b.xy_max,
                "pair_mixed_max": pair_mixed_max(a.gram_bound, a.gram_bound),
            });
            ("bounds", None, body, 0)
        }
        Command::Path => {
            let v = read_input_value(&c.input)?;
            let wv = v
                .get("w")
                .ok_or_else(|| Error::InvalidInput("field \"w\": missing".into()))?;
            let w = io::parse_config_point(wv)?;
            let variant_str = v.get("variant").and_then(Value::as_str).ok_or_else(|| {
                Error::InvalidInput("field \"variant\": expected \"H0\", \"H1\", or \"H2\"".into())
            })?;
            let variant = CartanVariant::parse(variant_str)?;
            let circle = match v.get("circle") {
                None | Some(Value::Null) => None,
                Some(cv) => Some(pair_from(cv, "circle")?),
            };
            let hyperbolas = match v.get("hyperbolas") {
                None | Some(Value::Null) => Vec::new(),
                Some(hv) => {
                    let arr = hv.as_array().ok_or_else(|| {
                        Error::InvalidInput(
                            "field \"hyperbolas\": expected an array of [c, d] pairs".into(),
                        )
                    })?;
                    arr.iter()
                        .enumerate()
                        .map(|(j, e)| pair_from(e, &format!("hyperbolas[{j}]")))
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let params = CartanParams::new(variant, circle, hyperbolas)?;
            let count = c.samples.unwrap_or(64);
            let path = cartan_path(&params, &w, count, tol)?;
            let samples: Vec<Value> = path
                .samples()
                .iter()
                .map(|s| json!({"t": s.t, "element": io::group_element_json(&s.element)}))
                .collect();
            let body = json!({
                "variant": variant.as_str(),
                "count": samples.len(),
                "samples": samples,
            });
            ("path", None, body, 0)
        }
        Command::AuditExhaustion(a) => {
            let opts = AuditOptions {
                n: c.n.unwrap_or(2),
                copies: c.copies.unwrap_or(2),
                gram_bound: a.gram_bound,
                r: a.r,
                samples: c.samples.unwrap_or(10_000),
                seed: c.seed,
            };
            let report = exhaustion_audit(&opts)?;
            let body = json!({
                "options": {
                    "n": opts.n,
                    "N": opts.copies,
                    "gram_bound": opts.gram_bound,
                    "r": opts.r,
                    "samples": opts.samples,
                },
                "report": serde_json::to_value(&report)?,
            });
            ("audit-exhaustion", Some(c.seed), body, 0)
        }
        Command::Verify(a) => {
            let id = SuiteId::parse(&a.suite)?;
            let cfg = SuiteConfig { seed: c.seed, tol, samples: c.samples };
            let reports = suites::run(id, &cfg);
            let passed = reports.iter().all(|r| r.passed);
            let warnings: usize = reports.iter().map(|r| r.warnings).sum();
            let code = if !passed {
                1
            } else if warnings > 0 {
                3
            } else {
                0
            };
            let body = json!({
                "passed": passed,
                "warnings": warnings,
                "suites": serde_json::to_value(&reports)?,
            });
            ("verify", Some(c.seed), body, code)
        }
    };

    let envelope = io::report_envelope(command, seed, tol, body);
    let text = if c.json {
        serde_json::to_string(&envelope)?
    } else {
        serde_json::to_string_pretty(&envelope)?
    };
    write_output(&c.out, &text)?;
    Ok(code)
}
