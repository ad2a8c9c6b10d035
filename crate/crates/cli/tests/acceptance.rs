//! Runs the ten numbered checks at their time budgets and prints one line each.

use std::process::ExitCode;

use rgb_tiling_cli::suite::{criterion, Status, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for i in 1..=CRITERIA.len() {
        let r = criterion(i, None);
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!(
            "criterion {i:>2} {tag} {:<32} {:>9} checked {:>7} ms (budget {} ms) {}",
            r.name, r.count, r.elapsed_ms, r.limit_ms, r.detail
        );
        if r.status != Status::Pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
