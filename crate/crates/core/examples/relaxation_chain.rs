//! Relaxing circuit-hyperplanes one at a time lowers κ by exactly one.

use matroid_cover::cover::{kappa_exact, relax};
use matroid_cover::{catalog, is_isomorphic};

fn main() {
    let chain = ["MK4", "W3", "Q6", "P6", "U(3,6)"];
    let mut m = catalog(chain[0]).unwrap();
    for (step, name) in chain.iter().enumerate() {
        let expected = catalog(name).unwrap();
        let kappa = kappa_exact(&m).unwrap().value;
        println!("step {step}: ≅ {name:<7} {}  κ = {kappa}", is_isomorphic(&m, &expected).is_some());
        if let Some(&h) = m.circuit_hyperplanes().first() {
            println!("        relax {h}");
            m = relax(&m, h).unwrap();
        }
    }
}
