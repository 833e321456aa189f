//! Library results checked against independent brute-force computations and
//! closed-form counts.

use std::collections::BTreeSet;

use matroid_cover::bounds::{kappa_count_upper, knuth_lower};
use matroid_cover::catalog::CatalogName;
use matroid_cover::cover::kappa_exact;
use matroid_cover::families::generated_sparse_paving;
use matroid_cover::johnson::{gs_class, spike, stable_set_census, SetSystem};
use matroid_cover::lp::{kappa_star, randomized_round, rounding_sample_size};
use matroid_cover::{catalog, Matroid};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Bases as plain bitmasks.
fn masks(m: &Matroid) -> Vec<u32> {
    m.bases().iter().map(|b| b.bits()).collect()
}

fn rank(bases: &[u32], x: u32) -> u32 {
    bases.iter().map(|b| (b & x).count_ones()).max().unwrap_or(0)
}

fn flats(bases: &[u32], n: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|&x| {
            let r = rank(bases, x);
            (0..n).filter(|e| x & (1 << e) == 0).all(|e| rank(bases, x | 1 << e) > r)
        })
        .collect()
}

/// Smallest number of proper flats `F` with `|X ∩ F| > r(F)` for every non-basis `X`.
fn brute_force_kappa(m: &Matroid) -> usize {
    let n = m.len();
    let r = m.rank() as u32;
    let bases = masks(m);
    let basis_set: BTreeSet<u32> = bases.iter().copied().collect();
    let non_bases: Vec<u32> = (0u32..1 << n).filter(|x| x.count_ones() == r && !basis_set.contains(x)).collect();
    let useful: Vec<(u32, u32)> = flats(&bases, n)
        .into_iter()
        .map(|f| (f, rank(&bases, f)))
        .filter(|&(f, rf)| rf < r && non_bases.iter().any(|x| (x & f).count_ones() > rf))
        .collect();
    let covers = |chosen: &[usize]| {
        non_bases.iter().all(|x| chosen.iter().any(|&i| (x & useful[i].0).count_ones() > useful[i].1))
    };
    for size in 0..=useful.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if covers(&idx) {
                return size;
            }
            // Next combination in lexicographic order.
            let mut i = size;
            while i > 0 && idx[i - 1] == useful.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("all proper flats together cover every non-basis")
}

#[test]
fn kappa_matches_exhaustive_search() {
    let mut samples: Vec<Matroid> =
        CatalogName::standard_set().into_iter().map(|n| n.build()).filter(|m| m.len() <= 7).collect();
    samples.extend(generated_sparse_paving(5, 30, 7).into_iter().map(|s| s.matroid));
    for m in &samples {
        assert_eq!(kappa_exact(m).unwrap().value, brute_force_kappa(m), "{m:?}");
    }
}

#[test]
fn flats_match_exhaustive_search() {
    for name in ["MK4", "W3", "P6", "U(2,5)", "V8"] {
        let m = catalog(name).unwrap();
        let mine: Vec<u32> = m.all_flats().unwrap().iter().map(|f| f.elements.bits()).collect();
        let mut theirs = flats(&masks(&m), m.len());
        let mut sorted = mine.clone();
        sorted.sort_unstable();
        theirs.sort_unstable();
        assert_eq!(sorted, theirs, "{name}");
    }
}

#[test]
fn complete_graph_counts() {
    // Cayley: m^(m-2) spanning trees; Bell numbers count the flats.
    let bell = [1, 1, 2, 5, 15, 52, 203];
    for (m, flats) in bell.iter().enumerate().skip(2) {
        let g = catalog(&format!("MK({m})")).unwrap();
        assert_eq!(g.bases().len(), m.pow(m as u32 - 2), "K{m} trees");
        assert_eq!(g.all_flats().unwrap().len(), *flats, "K{m} flats");
    }
}

#[test]
fn complete_graph_kappa_values() {
    assert_eq!(kappa_exact(&catalog("MK(5)").unwrap()).unwrap().value, 15);
    assert_eq!(kappa_exact(&catalog("MK(6)").unwrap()).unwrap().value, 31);
}

#[test]
fn stable_set_counts_match_direct_enumeration() {
    for (n, r) in [(5usize, 2usize), (6, 3)] {
        let vertices: Vec<u32> = (0u32..1 << n).filter(|x| x.count_ones() == r as u32).collect();
        let adjacent = |a: u32, b: u32| (a ^ b).count_ones() == 2;
        let stable = (0u64..1 << vertices.len())
            .filter(|mask| {
                let chosen: Vec<u32> =
                    (0..vertices.len()).filter(|i| mask >> i & 1 == 1).map(|i| vertices[i]).collect();
                chosen.iter().enumerate().all(|(i, a)| chosen[i + 1..].iter().all(|b| !adjacent(*a, *b)))
            })
            .count();
        let census = stable_set_census(n, r).unwrap();
        assert_eq!(census.stable, stable as u64, "({n},{r})");
    }
    // J(5,2) is the complement of the Petersen graph: stable sets are the
    // empty set, 10 vertices and 15 edges of the Petersen graph.
    assert_eq!(stable_set_census(5, 2).unwrap().stable, 26);
}

#[test]
fn class_labels_match_direct_sums() {
    for (n, r) in [(7usize, 3usize), (8, 4), (9, 4)] {
        for k in 0..n {
            let direct: Vec<u32> = (0u32..1 << n)
                .filter(|x| x.count_ones() == r as u32)
                .filter(|x| (0..n).filter(|i| x >> i & 1 == 1).map(|i| i + 1).sum::<usize>() % n == k)
                .collect();
            let class: Vec<u32> = gs_class(n, r, k).unwrap().members.iter().map(|x| x.bits()).collect();
            assert_eq!(class, direct, "({n},{r},{k})");
        }
    }
}

#[test]
fn spike_basis_count_by_inclusion_exclusion() {
    for (n, d) in [(4usize, 2usize), (5, 2), (6, 3)] {
        let system = SetSystem::all_k_subsets(n, d).unwrap();
        let m = spike(&system).unwrap();
        let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
        // n-sets of 2n elements containing two or more full legs.
        let mut with_two_legs = 0;
        for legs in 2..=(n as u64 / 2) {
            let rest = n as u64 - 2 * legs;
            // Choose the full legs, then one element from each of `rest` other legs.
            with_two_legs += binom(n as u64, legs) * binom(n as u64 - legs, rest) * (1 << rest);
        }
        let expected = binom(2 * n as u64, n as u64) - with_two_legs - binom(n as u64, d as u64);
        assert_eq!(m.bases().len() as u64, expected, "n = {n}");
    }
}

#[test]
fn rounding_sample_size_matches_floating_point() {
    for s in generated_sparse_paving(11, 20, 9) {
        let m = &s.matroid;
        let ks = kappa_star(m).unwrap();
        if ks.value == BigRational::from_integer(BigInt::from(0)) {
            continue;
        }
        let k = ks.value.to_f64().unwrap();
        let total = m.bases().len() as f64 + m.non_bases().len() as f64;
        let float = (k * (total / k).ln()).max(0.0);
        let exact = rounding_sample_size(m, &ks.value) as f64;
        assert!((exact - float.ceil()).abs() <= 1.0, "{}: {exact} vs {float}", s.name);
        assert_eq!(randomized_round(m, &ks.cover, 9).unwrap(), randomized_round(m, &ks.cover, 9).unwrap());
    }
}

#[test]
fn counting_bound_values() {
    assert_eq!(knuth_lower(8), BigRational::new(35.into(), 4.into()));
    assert_eq!(knuth_lower(12), BigRational::from_integer(77.into()));
    // log2(32) for n = 3, k = 1.
    assert_eq!(kappa_count_upper(3, 1).unwrap().approx, 5.0);
    // log2(k · C(N, k)) for n = 4, k = 2: N = 80, 2 · 3160 = 6320.
    let v = kappa_count_upper(4, 2).unwrap();
    assert!((v.approx - 6320f64.log2()).abs() < 1e-9);
}
