//! Minimum flat covers with optimality certificates, and the cover transforms.
//!
//! Usage: `cargo run --example flat_cover -- [NAME]` (default `MK(5)`).

use std::time::Instant;

use matroid_cover::catalog;
use matroid_cover::cover::{dualize_cover, is_flat_cover, kappa_exact, mu_integer, project_cover};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "MK(5)".into());
    let m = catalog(&name).expect("catalog name");

    let start = Instant::now();
    let result = kappa_exact(&m).expect("within size cap");
    println!("κ({name}) = {} in {:.1?}", result.value, start.elapsed());
    for flat in &result.cover.flats {
        println!("  rank {} flat {}", flat.rank, flat.elements);
    }
    match &result.optimality_certificate {
        Some(c) => println!("certificate: {} non-bases, no flat covers two of them", c.weights.len()),
        None => println!("no integral certificate (μ < κ)"),
    }
    let (mu, _) = mu_integer(&m).unwrap();
    println!("μ({name}) = {mu}");

    let dual = dualize_cover(&m, &result.cover).unwrap();
    println!("dual cover of size {} covers M*: {}", dual.len(), is_flat_cover(&m.dual(), &dual).unwrap().holds());

    let projected = project_cover(&m, &result.cover, 0).unwrap();
    let deletion = m.delete(matroid_cover::Subset::singleton(0)).matroid;
    println!(
        "projected cover of size {} covers M \\ 1: {}",
        projected.len(),
        is_flat_cover(&deletion, &projected).unwrap().holds()
    );
}
