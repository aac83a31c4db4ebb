//! One line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;

use itpda_core::verify::{check, VerifyConfig, CHECKS};

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes the filter through; honour a numeric one
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    println!("\nrunning {} acceptance criteria", CHECKS.len());
    for (id, _) in CHECKS {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let report = check(id, &cfg).expect("listed check");
        println!("{report}");
        failed += usize::from(!report.passed);
    }
    println!("acceptance: {} passed, {failed} failed\n", CHECKS.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
