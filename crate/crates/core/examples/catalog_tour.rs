//! Named matroids: flats, duality, minors, isomorphism and the `.bases` format.

use matroid_cover::catalog::CatalogName;
use matroid_cover::io::{parse_bases, write_bases};
use matroid_cover::{catalog, has_minor, is_isomorphic, Subset};

fn main() {
    for name in CatalogName::standard_set() {
        let m = name.build();
        let flats = m.all_flats().map(|f| f.len()).unwrap_or(0);
        println!(
            "{name:<8} n = {:>2}  r = {}  bases = {:>5}  flats = {:>4}  circuit-hyperplanes = {}",
            m.len(),
            m.rank(),
            m.bases().len(),
            flats,
            m.circuit_hyperplanes().len()
        );
    }

    let v8 = catalog("V8").unwrap();
    println!("\nV8 is self-dual: {}", is_isomorphic(&v8, &v8.dual()).is_some());

    let k4 = catalog("MK4").unwrap();
    println!("MK4 and MK(4) are isomorphic: {}", is_isomorphic(&k4, &catalog("MK(4)").unwrap()).is_some());
    println!("V8 has an MK4-minor: {}", has_minor(&v8, &k4).is_some());

    let w3 = catalog("W3").unwrap();
    if let Some(w) = has_minor(&catalog("MK(5)").unwrap(), &w3) {
        println!("MK(5) contracts {} and deletes {} to reach W3", w.contract, w.delete);
    }

    let deletion = k4.delete(Subset::from_labels([1])).matroid;
    println!("\nMK4 \\ 1 in .bases form:\n{}", write_bases(&deletion, &["MK4 minus element 1".into()]));
    assert_eq!(parse_bases(&write_bases(&deletion, &[])).unwrap(), deletion);
}
