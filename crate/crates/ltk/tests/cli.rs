//! End-to-end tests of the `ltk` binary: worked examples, exit codes,
//! JSON schema errors, determinism, and output plumbing.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run_with(args: &[&str], stdin: Option<&str>, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ltk"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("binary exits")
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_with(args, stdin, &[])
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process not signaled")
}

fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    v["report"].clone()
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// The two-column point with ρ = 1/3 + 1 = 4/3 used by the worked
/// degeneration example: columns (2i, 1, i) and (i, 0, 0) at n = 2.
fn worked_point() -> String {
    json!({
        "n": 2, "N": 2,
        "re": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        "im": [[2.0, 1.0], [0.0, 0.0], [1.0, 0.0]]
    })
    .to_string()
}

#[test]
fn rho_reproduces_the_worked_value() {
    let out = run(&["rho"], Some(&worked_point()));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let rho = report(&out)["rho"].as_f64().unwrap();
    assert!((rho - 4.0 / 3.0).abs() <= 1e-9, "rho = {rho}");

    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], json!("rho"));
    assert_eq!(v["tol_abs"], json!(1e-10));
    assert_eq!(v["tol_rel"], json!(1e-8));
    assert!(v["version"].as_str().is_some_and(|s| !s.is_empty()));
    assert!(v["timestamp"].as_u64().is_some());
}

#[test]
fn closed_identifies_the_isotropic_column() {
    let z = r#"{"n": 2, "N": 1, "re": [[1.0], [1.0], [0.0]], "im": [[0.0], [0.0], [0.0]]}"#;
    let out = run(&["closed"], Some(z));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["closed"], json!(false));
    assert_eq!(r["span"], json!(1));
    assert_eq!(r["gram_rank"], json!(0));
}

#[test]
fn eta_cone_and_tube_report_per_column_values() {
    let z = r#"{"n": 2, "N": 1, "re": [[0.0], [0.0], [0.0]], "im": [[1.0], [0.0], [0.0]]}"#;
    let out = run(&["eta"], Some(z));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["eta_re"], json!([-1.0]));
    assert_eq!(r["eta_im"], json!([0.0]));

    let y = r#"{"n": 2, "N": 2, "re": [[2.0, 0.5], [1.0, 1.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}"#;
    let out = run(&["cone"], Some(y));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["in_cone"], json!([true, false]));
    assert_eq!(r["all"], json!(false));

    let z = r#"{"n": 2, "N": 1, "re": [[7.0], [-3.0], [0.25]], "im": [[2.0], [1.0], [0.0]]}"#;
    let out = run(&["tube"], Some(z));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["in_tube"], json!(true));
    assert_eq!(r["eta_im"], json!([3.0]));
}

#[test]
fn product_needs_exactly_two_columns() {
    let z = r#"{"n": 2, "N": 2, "re": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]], "im": [[2.0, 1.0], [0.0, 0.0], [0.0, 0.0]]}"#;
    let out = run(&["product"], Some(z));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    // (2i, 1, 0)•(i, 0, 0) = 2i·i = −2.
    assert_eq!(r["product_re"], json!(-2.0));
    assert_eq!(r["product_im"], json!(0.0));

    let single = r#"{"n": 2, "N": 1, "re": [[1.0], [0.0], [0.0]], "im": [[1.0], [0.0], [0.0]]}"#;
    let out = run(&["product"], Some(single));
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("N = 1"));
}

#[test]
fn quotient_rank_and_radical_agree_on_the_worked_point() {
    let out = run(&["quotient"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["gram_re"], json!([[-4.0, -2.0], [-2.0, -1.0]]));
    assert_eq!(r["gram_im"], json!([[0.0, 0.0], [0.0, 0.0]]));
    assert_eq!(r["max_abs"], json!(4.0));

    let out = run(&["rank"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["span"]["rank"], json!(2));
    assert_eq!(r["gram"]["rank"], json!(1));
    assert_eq!(r["span"]["marginal"], json!(false));

    let out = run(&["radical"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["dim"], json!(1));
    assert_eq!(r["span"], json!(2));
    assert_eq!(r["gram_rank"], json!(1));
    assert_eq!(r["basis_re"].as_array().unwrap().len(), 1);
}

#[test]
fn degenerate_splits_the_worked_point_and_rejects_singular_pairings() {
    let out = run(&["degenerate"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["radical_dim"], json!(1));
    let rho_z = r["rho_z"].as_f64().unwrap();
    let rho_u = r["rho_u"].as_f64().unwrap();
    assert!((rho_z - 4.0 / 3.0).abs() <= 1e-9);
    assert!((rho_u - 5.0 / 4.0).abs() <= 1e-9);
    assert!(r["gram_drift"].as_f64().unwrap() <= 1e-10);

    // A real isotropic column has a singular radical pairing: the
    // split must refuse it with the numerical-degeneracy exit code.
    let iso = r#"{"n": 2, "N": 1, "re": [[1.0], [1.0], [0.0]], "im": [[0.0], [0.0], [0.0]]}"#;
    let out = run(&["degenerate"], Some(iso));
    assert_eq!(code(&out), 3);
    assert!(stderr_text(&out).contains("degenerate radical pairing"));
}

#[test]
fn levi_moment_minimize_and_certify_run_on_simple_points() {
    let out = run(&["levi"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let spec: Vec<f64> =
        r["spectrum"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(spec.len(), 6);
    assert!(spec.windows(2).all(|w| w[0] <= w[1]), "spectrum sorted");
    assert!(r["min_eigenvalue"].as_f64().unwrap() > 0.0);

    let out = run(&["moment"], Some(&worked_point()));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    // n = 2: two boosts plus one rotation.
    assert_eq!(r["coefficients"].as_array().unwrap().len(), 3);
    assert!(r["norm"].as_f64().unwrap().is_finite());

    // A purely imaginary point is already balanced: μ = 0, zero steps.
    let balanced = r#"{"n": 2, "N": 1, "re": [[0.0], [0.0], [0.0]], "im": [[2.0], [0.0], [0.0]]}"#;
    let out = run(&["minimize"], Some(balanced));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["converged"], json!(true));
    let rho_initial = r["rho_initial"].as_f64().unwrap();
    let rho_final = r["rho_final"].as_f64().unwrap();
    assert!((rho_initial - 0.25).abs() <= 1e-12);
    assert!((rho_final - rho_initial).abs() <= 1e-9);

    let out = run(&["certify", "--seed", "5"], Some(balanced));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], json!("member"));
    assert!(!r["witness"].is_null());

    // Nothing maps the zero point into the tube, so no witness exists.
    let zero = r#"{"n": 2, "N": 1, "re": [[0.0], [0.0], [0.0]], "im": [[0.0], [0.0], [0.0]]}"#;
    let out = run(&["certify", "--starts", "2", "--max-iter", "60"], Some(zero));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["status"], json!("unknown"));
    assert!(r["witness"].is_null());
}

#[test]
fn slice_boosts_the_first_column_onto_the_time_axis() {
    let z = r#"{"n": 2, "N": 1, "re": [[0.5], [-0.25], [1.0]], "im": [[2.0], [1.0], [0.0]]}"#;
    let out = run(&["slice"], Some(z));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let im = r["point"]["im"].as_array().unwrap();
    let first = im[0][0].as_f64().unwrap();
    assert!((first - 3.0f64.sqrt()).abs() <= 1e-12, "η = 3 lands on √3·e₀");
    assert!(im[1][0].as_f64().unwrap().abs() <= 1e-12);
    assert!(im[2][0].as_f64().unwrap().abs() <= 1e-12);
    let etas = r["eta_im"].as_array().unwrap();
    assert!((etas[0].as_f64().unwrap() - 3.0).abs() <= 1e-12);
}

#[test]
fn path_walks_from_the_identity_to_the_requested_element() {
    let (a, b) = (0.05f64.cos(), 0.05f64.sin());
    let (c, d) = (0.05f64.cosh(), 0.05f64.sinh());
    let input = json!({
        "w": {
            "n": 3, "N": 1,
            "re": [[0.0], [0.0], [0.0], [0.0]],
            "im": [[2.0], [0.3], [0.2], [0.1]]
        },
        "variant": "H0",
        "circle": [a, b],
        "hyperbolas": [[c, d]]
    })
    .to_string();
    let out = run(&["path", "--samples", "9"], Some(&input));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let r = report(&out);
    assert_eq!(r["variant"], json!("H0"));
    assert_eq!(r["count"], json!(9));
    let samples = r["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 9);
    for (i, s) in samples.iter().enumerate() {
        let t = s["t"].as_f64().unwrap();
        assert!((t - i as f64 / 8.0).abs() <= 1e-15, "uniform grid");
    }

    // The endpoint must be exactly the requested Cartan element.
    let params = ltk::group::CartanParams::new(
        ltk::group::CartanVariant::H0,
        Some((a, b)),
        vec![(c, d)],
    )
    .unwrap();
    let want = ltk::group::cartan_element(&params, 3).unwrap();
    let end = &samples[8]["element"];
    for i in 0..4 {
        for j in 0..4 {
            let re = end["matrix_re"][i][j].as_f64().unwrap();
            let im = end["matrix_im"][i][j].as_f64().unwrap();
            let w = want.matrix()[(i, j)];
            assert!((re - w.re).abs() <= 1e-12 && (im - w.im).abs() <= 1e-12);
        }
    }

    // Input validation: a missing variant and an impossible block
    // layout are usage errors naming the field.
    let no_variant = json!({"w": {"n": 3, "N": 1,
        "re": [[0.0], [0.0], [0.0], [0.0]], "im": [[2.0], [0.0], [0.0], [0.0]]}})
    .to_string();
    let out = run(&["path"], Some(&no_variant));
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("\"variant\""));

    let h2_circle = json!({
        "w": {"n": 2, "N": 1, "re": [[0.0], [0.0], [0.0]], "im": [[2.0], [0.0], [0.0]]},
        "variant": "H2", "circle": [1.0, 0.0], "hyperbolas": [[1.0, 0.0]]
    })
    .to_string();
    let out = run(&["path"], Some(&h2_circle));
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("H2"));
}

#[test]
fn verify_cauchy_schwarz_passes_at_contract_scale() {
    let out = run(&["verify", "cauchy-schwarz", "--seed", "7", "--samples", "100000"], None);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], json!(7));
    let r = &v["report"];
    assert_eq!(r["passed"], json!(true));
    let checks = r["suites"][0]["checks"].as_array().unwrap();
    let defect = checks.iter().find(|c| c["name"] == json!("nonnegative-defect")).unwrap();
    assert_eq!(defect["cases"], json!(100_000));
    assert!(defect["measured"].as_f64().unwrap() >= -1e-12);
}

#[test]
fn reports_are_identical_across_runs_and_thread_counts() {
    let args = ["verify", "invariance", "--samples", "40", "--seed", "3"];
    let strip = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run(&args, None);
    assert_eq!(code(&first), 0);
    let again = run(&args, None);
    let single_thread = run_with(&args, None, &[("LTK_THREADS", "1")]);
    let four_threads = run_with(&args, None, &[("LTK_THREADS", "4")]);
    assert_eq!(strip(&first), strip(&again), "repeat run differs");
    assert_eq!(strip(&first), strip(&single_thread), "LTK_THREADS=1 differs");
    assert_eq!(strip(&first), strip(&four_threads), "LTK_THREADS=4 differs");
}

#[test]
fn malformed_input_names_the_offending_field() {
    let cases: &[(&str, &str)] = &[
        (r#"{"n": 2, "N": 1, "re": [[1.0], [1.0], [0.0]]}"#, "\"im\""),
        (r#"{"n": 2, "N": 0, "re": [[], [], []], "im": [[], [], []]}"#, "\"N\""),
        (r#"{"n": 2, "N": 1, "re": [[1.0], [1.0]], "im": [[0.0], [0.0]]}"#, "\"re\""),
        (
            r#"{"n": 2, "N": 1, "re": [["x"], [1.0], [0.0]], "im": [[0.0], [0.0], [0.0]]}"#,
            "(0, 0)",
        ),
    ];
    for (input, needle) in cases {
        let out = run(&["eta"], Some(input));
        assert_eq!(code(&out), 2, "input: {input}");
        let err = stderr_text(&out);
        assert!(err.contains(needle), "missing {needle:?} in: {err}");
    }

    let out = run(&["eta"], Some("this is not json"));
    assert_eq!(code(&out), 2);
    assert!(!stderr_text(&out).is_empty());
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    let out = run(&["frobnicate"], None);
    assert_eq!(code(&out), 2);

    let out = run(&["verify"], None);
    assert_eq!(code(&out), 2, "verify requires a suite name");

    let out = run(&["verify", "nope"], None);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("nope"));

    let out = run(&["--help"], None);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));

    let out = run(&["--version"], None);
    assert_eq!(code(&out), 0);
}

#[test]
fn output_flags_select_destination_and_layout() {
    let tmp = std::env::temp_dir().join(format!("ltk-e2e-out-{}.json", std::process::id()));
    let z = r#"{"n": 2, "N": 1, "re": [[0.0], [0.0], [0.0]], "im": [[1.0], [0.0], [0.0]]}"#;

    let out = run(&["eta", "--out", tmp.to_str().unwrap()], Some(z));
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty(), "report went to the file, not stdout");
    let text = std::fs::read_to_string(&tmp).unwrap();
    assert!(text.ends_with('\n'));
    let from_file: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(from_file["report"]["eta_re"], json!([-1.0]));
    std::fs::remove_file(&tmp).ok();

    let compact = run(&["eta", "--json"], Some(z));
    assert_eq!(code(&compact), 0);
    let line = String::from_utf8_lossy(&compact.stdout);
    assert_eq!(line.trim_end().lines().count(), 1, "compact mode is one line");
    let pretty = run(&["eta"], Some(z));
    let mut a: Value = serde_json::from_str(line.trim_end()).unwrap();
    let mut b: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    a["timestamp"] = json!(0);
    b["timestamp"] = json!(0);
    assert_eq!(a, b, "layout flag must not change content");
}

#[test]
fn audit_exhaustion_echoes_options_and_reports_bounds() {
    let out = run(&["audit-exhaustion", "--samples", "400", "--seed", "11"], None);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let r = report(&out);
    assert_eq!(r["options"]["n"], json!(2));
    assert_eq!(r["options"]["N"], json!(2));
    assert_eq!(r["options"]["samples"], json!(400));
    assert_eq!(r["options"]["gram_bound"], json!(10.0));
    let audit = &r["report"];
    assert!(audit["accepted_full"].as_u64().unwrap() > 0);
    assert_eq!(audit["checks_failed"], json!(0));
}
