//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Plain `main` so the lines are shown even when everything passes.

use std::process::ExitCode;

use sheafgraph::hmscheck::{run_all, CRITERIA};

fn main() -> ExitCode {
    let outcomes = run_all(2024);
    assert_eq!(outcomes.len(), CRITERIA);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: {CRITERIA}/{CRITERIA} criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
