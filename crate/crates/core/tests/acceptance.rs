//! The ten acceptance criteria at full size, one PASS/FAIL line each.
//! Runs without the libtest harness so the lines always reach the console.

use std::process::ExitCode;

use hfree::verify::{run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = VerifyOptions {
        quick: false,
        ..VerifyOptions::default()
    };
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &opts);
        println!("{r}");
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
