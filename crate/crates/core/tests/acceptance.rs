use std::process::ExitCode;
use std::time::Instant;

use wp_core::verify::{criterion, CRITERIA};

fn main() -> ExitCode {
    let slow = std::env::var_os("WP_SLOW").is_some();
    let mut failed = 0;
    for n in 1..=CRITERIA.len() {
        let t = Instant::now();
        let r = criterion(n, slow);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {n:>2}: {} ({:.1?})", r.title, t.elapsed());
        if !r.passed {
            failed += 1;
            for (p, c) in r.checks.iter().filter(|(_, c)| !c.passed) {
                println!("    p={p} {}: {}", c.name, c.detail);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
