//! Exact evaluation of the counting bounds for small `n`.

use matroid_cover::bounds::{binom_bounds, kappa_count_upper, knuth_lower};
use matroid_cover::brackets::to_f64;
use matroid_cover::johnson::best_class;

fn main() {
    println!("{:>3} {:>10} {:>6} {:>14} {:>8}", "n", "knuth", "class", "log2 count", "ratio");
    for n in 2..=16u64 {
        let knuth = knuth_lower(n);
        let (_, class) = best_class(n as usize, n as usize / 2).unwrap();
        let kmax = (1u64 << n).div_ceil(n);
        let upper = kappa_count_upper(n as u32, kmax).unwrap();
        let central = binom_bounds(n, n / 2).unwrap();
        println!("{n:>3} {:>10.3} {class:>6} {:>14.3} {:>8.4}", to_f64(&knuth), upper.approx, central.central_ratio);
    }
    let all_hold = (1..=64u64).all(|n| (1..=n).all(|r| binom_bounds(n, r).unwrap().holds()));
    println!("binomial bounds hold for all 1 <= r <= n <= 64: {all_hold}");
}
