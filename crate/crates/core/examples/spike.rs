//! Spikes built from set systems, checked against their defining conditions.
//!
//! Usage: `cargo run --example spike -- [N]` (default 4).

use matroid_cover::cover::kappa_exact;
use matroid_cover::johnson::{spike, spike_conditions_hold, SetSystem};
use matroid_cover::subset::binomial;

fn main() {
    let n: usize = std::env::args().nth(1).map(|s| s.parse().expect("n")).unwrap_or(4);
    let system = SetSystem::all_k_subsets(n, n / 2).unwrap();
    let m = spike(&system).unwrap();
    println!("spike on {} elements, rank {}, {} bases", m.len(), m.rank(), m.bases().len());
    println!("leg and transversal conditions hold: {}", spike_conditions_hold(&m, &system));
    let kappa = kappa_exact(&m).unwrap().value;
    println!("κ = {kappa} >= C(n, n/2) = {}", binomial(n as u64, n as u64 / 2));
}
