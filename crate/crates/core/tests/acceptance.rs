//! The eleven acceptance criteria, one PASS/FAIL line each. Runs as a plain
//! binary so the lines are always printed; exits nonzero if any criterion
//! fails or errors.

use std::process::ExitCode;

use functidom::domsolve::SolveBudget;
use functidom::suite::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let budget = match SolveBudget::from_env() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("bad budget: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failures = 0;
    for info in &CRITERIA {
        match run_criterion(info.number, &budget) {
            Ok(report) => {
                println!("{}", report.line());
                for v in report.verdicts.iter().filter(|v| !v.passed) {
                    println!("    failed: {} {}", v.theorem_id, v.instance_descr);
                }
                if !report.passed() {
                    failures += 1;
                }
            }
            Err(e) => {
                println!(
                    "criterion {:>2} FAIL {} (error: {e})",
                    info.number, info.title
                );
                failures += 1;
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failures,
        CRITERIA.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
