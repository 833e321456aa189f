//! Fractional cover complexity: exact LP with a dual certificate, rounding and blow-up.
//!
//! Usage: `cargo run --example fractional_cover -- [NAME] [SEED]` (default `V8 1`).

use matroid_cover::catalog;
use matroid_cover::cover::{is_flat_cover, kappa_exact};
use matroid_cover::lp::{blow_up, exact_sub_solver, kappa_star, randomized_round, rounding_bound};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "V8".into());
    let seed: u64 = args.next().map(|s| s.parse().expect("seed")).unwrap_or(1);
    let m = catalog(&name).expect("catalog name");

    let ks = kappa_star(&m).unwrap();
    println!("κ*({name}) = {} (dual certificate value {})", ks.value, ks.certificate.value());
    for (flat, w) in &ks.cover.weights {
        println!("  {w} × rank {} flat {}", flat.rank, flat.elements);
    }

    let kappa = kappa_exact(&m).unwrap().value;
    println!("κ = {kappa} <= rounding bound {:.3}", matroid_cover::brackets::to_f64(&rounding_bound(&m, &ks.value)));

    let rounded = randomized_round(&m, &ks.cover, seed).unwrap();
    println!(
        "randomized rounding (seed {seed}): {} flats, valid = {}",
        rounded.len(),
        is_flat_cover(&m, &rounded).unwrap().holds()
    );

    for t in 0..m.rank().min(3) {
        let b = blow_up(&m, t, exact_sub_solver).unwrap();
        println!(
            "blow-up t = {t}: cost {} <= bound {} ({}), feasible = {}",
            b.cover.value(),
            b.cost_bound,
            matroid_cover::brackets::to_f64(&b.cost_bound),
            b.cover.is_feasible(&m)
        );
    }
}
