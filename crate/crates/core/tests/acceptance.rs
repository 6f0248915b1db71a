//! Runs the verification suite and prints one line per criterion.
//!
//! Set `COXSURF_SUITE=full` to include the X_6321 Groebner stages.
//! Failures confined to the surfaces in `KNOWN` are reported as FAIL but do
//! not fail the test run; any other failure does.

use coxsurf::verify::{run_suite, Suite, VerifyConfig};
use coxsurf::Catalog;
use std::process::ExitCode;

/// Criteria whose failures on these surfaces are understood.
const KNOWN: [(usize, &str); 2] = [(3, "X_9111"), (4, "X_9111")];

fn main() -> ExitCode {
    let suite = match std::env::var("COXSURF_SUITE").as_deref() {
        Ok("full") => Suite::Full,
        _ => Suite::Fast,
    };
    let catalog = match Catalog::resolve(None) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("catalog: {e}");
            return ExitCode::FAILURE;
        }
    };
    let config = VerifyConfig { suite, ..VerifyConfig::default() };
    let report = run_suite(&catalog, &config, &[]);
    let mut unexpected = 0;
    for c in &report.criteria {
        let known: Vec<&str> = KNOWN.iter().filter(|k| k.0 == c.id).map(|k| k.1).collect();
        let explained = c.failures.iter().all(|f| known.iter().any(|s| f.starts_with(&format!("{s}:"))));
        let tag = match (c.passed, explained) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{tag} criterion {} {}: {:.1} ms (limit {} ms)", c.id, c.title, c.elapsed_ms, c.limit_ms);
        for f in &c.failures {
            println!("    failure: {f}");
        }
        for n in &c.notes {
            println!("    note: {n}");
        }
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!("{passed}/{} criteria passed, {unexpected} unexpected failures", report.criteria.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
