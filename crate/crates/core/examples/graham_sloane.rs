//! Graham–Sloane classes of the Johnson graph and the sparse paving matroids they give.
//!
//! Usage: `cargo run --example graham_sloane -- [N] [R]` (default `9 4`).

use matroid_cover::cover::kappa_exact;
use matroid_cover::johnson::{best_class, gs_class, mk4_free_experiment, sample_class_matroid, v8_free_check};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse().expect("n")).unwrap_or(9);
    let r: usize = args.next().map(|s| s.parse().expect("r")).unwrap_or(4);

    let sizes: Vec<usize> = (0..n).map(|k| gs_class(n, r, k).unwrap().members.len()).collect();
    let (k, size) = best_class(n, r).unwrap();
    println!("class sizes for ({n},{r}): {sizes:?}, best k = {k} with {size} sets");

    let m = sample_class_matroid(n, r, k, 0.5, 7).unwrap();
    println!("sampled matroid: {} non-bases, κ = {}", m.non_bases().len(), kappa_exact(&m).unwrap().value);

    if n % 2 == 1 {
        let report = mk4_free_experiment(n, r, k, 20, 0.5, 1).unwrap();
        println!("MK4 minors in {} samples: {}", report.trials, report.failures.len());
    }
    match v8_free_check(n, r) {
        Ok(report) => println!(
            "full class: V8-minor = {}, κ = {}, C(n,r)/n = {}",
            report.has_v8_minor, report.kappa, report.lower_bound
        ),
        Err(e) => println!("full class check skipped: {e}"),
    }
}
