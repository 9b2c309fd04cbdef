//! Runs every criterion under the default configuration and prints one
//! PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;

use se2_coset_cli::{run_acceptance, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let report = match run_acceptance(&cfg, |r| println!("{}", r.line())) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL acceptance suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let failed = report.criteria.iter().filter(|c| !c.pass).count();
    println!("acceptance: {} criteria, {} failed", report.criteria.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
