//! The named verification suites behind `ltk verify`: each one binds a
//! mathematical statement to a randomized executable check and reports
//! measured extremes against fixed bounds. This runs two of them at
//! reduced case counts; the acceptance tests run all ten at full
//! scale.
//!
//! Run with `cargo run --example verification_suites`.

use ltk::suites::{run, SuiteConfig, SuiteId};

fn main() {
    let cfg = SuiteConfig { seed: 1, samples: Some(500), ..Default::default() };

    for id in [SuiteId::CauchySchwarz, SuiteId::RadicalLemmas] {
        for report in run(id, &cfg) {
            println!(
                "suite {} (seed {}): {}",
                report.suite,
                report.seed,
                if report.passed { "pass" } else { "FAIL" }
            );
            for c in &report.checks {
                println!(
                    "  [{}] {:<28} measured {:>12.4e}  bound {:>9.1e}  ({} cases)",
                    if c.passed { "ok" } else { "!!" },
                    c.name,
                    c.measured,
                    c.bound,
                    c.cases
                );
            }
            if report.warnings > 0 {
                println!("  {} marginal rank decisions", report.warnings);
            }
        }
    }
}
