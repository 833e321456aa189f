//! Runs the seeded invariant suites and prints one line per check.
//!
//! Usage: `cargo run --example verify_suites -- [suite] [seed] [max_n]`

use std::time::Instant;

use matroid_cover::verify::{run_suite, Status, Suite, DEFAULT_MAX_N};

fn main() {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().map(|s| s.parse().expect("suite name")).unwrap_or(Suite::All);
    let seed: u64 = args.next().map(|s| s.parse().expect("seed")).unwrap_or(1);
    let max_n: usize = args.next().map(|s| s.parse().expect("max_n")).unwrap_or(DEFAULT_MAX_N);

    let start = Instant::now();
    let report = run_suite(suite, seed, max_n);
    for check in &report.checks {
        let mark = if check.status == Status::Pass { "pass" } else { "FAIL" };
        println!("{mark}  {:<36} {}", check.name, check.details);
    }
    println!("{} checks, all passed: {}, {:.1?}", report.checks.len(), report.passed(), start.elapsed());
}
