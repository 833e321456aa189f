use proptest::prelude::*;

use matroid_cover::cover::{dualize_cover, is_flat_cover, kappa_exact, relax};
use matroid_cover::io::{parse_bases, write_bases};
use matroid_cover::johnson::{is_sparse_paving, sample_class_matroid};
use matroid_cover::lp::{kappa_star, randomized_round};
use matroid_cover::subset::k_subsets;
use matroid_cover::{is_isomorphic, GroundMap, Matroid, Subset};

/// Sparse paving matroids from random parts of Graham–Sloane classes.
fn sparse_paving() -> impl Strategy<Value = Matroid> {
    (5usize..=8)
        .prop_flat_map(|n| (Just(n), 2..=n - 2, 0..n, 0.2f64..=1.0, any::<u64>()))
        .prop_map(|(n, r, k, p, seed)| sample_class_matroid(n, r, k, p, seed).unwrap())
}

fn with_permutation() -> impl Strategy<Value = (Matroid, Vec<usize>)> {
    sparse_paving().prop_flat_map(|m| {
        let n = m.len();
        (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subset_labels_roundtrip(bits in 0u32..1 << 20) {
        let s = Subset::from_bits(bits);
        prop_assert_eq!(Subset::from_labels(s.labels()), s);
        prop_assert_eq!(s.len(), bits.count_ones() as usize);
    }

    #[test]
    fn subset_set_algebra(a in 0u32..1 << 16, b in 0u32..1 << 16) {
        let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.intersection(y).is_subset_of(x));
        prop_assert_eq!(x.symmetric_difference(y).len(), (a ^ b).count_ones() as usize);
    }

    #[test]
    fn dual_is_an_involution_with_rank_formula(m in sparse_paving()) {
        let dual = m.dual();
        prop_assert_eq!(&dual.dual(), &m);
        for bits in 0u32..1 << m.len() {
            let x = Subset::from_bits(bits);
            let complement = m.ground().difference(x);
            prop_assert_eq!(dual.rank_of(x), x.len() + m.rank_of(complement) - m.rank());
        }
    }

    #[test]
    fn closure_is_monotone_and_idempotent(m in sparse_paving(), a in any::<u32>(), b in any::<u32>()) {
        let mask = (1u32 << m.len()) - 1;
        let x = Subset::from_bits(a & mask);
        let y = x.union(Subset::from_bits(b & mask));
        let cx = m.closure_of(x);
        prop_assert!(x.is_subset_of(cx));
        prop_assert_eq!(m.closure_of(cx), cx);
        prop_assert!(cx.is_subset_of(m.closure_of(y)));
        prop_assert_eq!(m.rank_of(cx), m.rank_of(x));
    }

    #[test]
    fn sparse_paving_kappa_counts_circuit_hyperplanes(m in sparse_paving()) {
        prop_assert!(is_sparse_paving(&m));
        let result = kappa_exact(&m).unwrap();
        prop_assert_eq!(result.value, m.circuit_hyperplanes().len());
        prop_assert!(is_flat_cover(&m, &result.cover).unwrap().holds());
        prop_assert_eq!(kappa_exact(&m.dual()).unwrap().value, result.value);
        let dual_cover = dualize_cover(&m, &result.cover).unwrap();
        prop_assert!(is_flat_cover(&m.dual(), &dual_cover).unwrap().holds());
    }

    #[test]
    fn relaxing_lowers_kappa_by_one(m in sparse_paving(), pick in any::<usize>()) {
        let hyperplanes = m.circuit_hyperplanes();
        prop_assume!(!hyperplanes.is_empty());
        let h = hyperplanes[pick % hyperplanes.len()];
        let relaxed = relax(&m, h).unwrap();
        prop_assert_eq!(kappa_exact(&relaxed).unwrap().value + 1, kappa_exact(&m).unwrap().value);
    }

    #[test]
    fn fractional_value_has_matching_certificate(m in sparse_paving(), seed in any::<u64>()) {
        let ks = kappa_star(&m).unwrap();
        prop_assert_eq!(ks.cover.value(), ks.value.clone());
        prop_assert_eq!(ks.certificate.value(), ks.value.clone());
        prop_assert!(ks.cover.is_feasible(&m));
        prop_assert!(ks.certificate.is_feasible(&m).unwrap());
        if ks.value > num_rational::BigRational::from_integer(0.into()) {
            let z = randomized_round(&m, &ks.cover, seed).unwrap();
            prop_assert!(is_flat_cover(&m, &z).unwrap().holds());
        }
    }

    #[test]
    fn relabeling_preserves_structure((m, images) in with_permutation()) {
        let permuted = m.relabel(&GroundMap::new(images));
        let map = is_isomorphic(&m, &permuted);
        prop_assert!(map.is_some());
        prop_assert_eq!(&m.relabel(&map.unwrap()), &permuted);
        prop_assert_eq!(kappa_exact(&permuted).unwrap().value, kappa_exact(&m).unwrap().value);
    }

    #[test]
    fn bases_text_roundtrip(m in sparse_paving()) {
        let text = write_bases(&m, &["generated".to_string()]);
        prop_assert!(text.lines().all(|l| !l.ends_with(' ')));
        prop_assert_eq!(parse_bases(&text).unwrap(), m);
    }

    #[test]
    fn bases_satisfy_exchange(m in sparse_paving()) {
        let bases = m.bases();
        for a in bases.iter().take(12) {
            for b in bases.iter().rev().take(12) {
                for x in a.difference(*b).iter() {
                    let exchanged = b.iter().any(|y| !a.contains(y) && m.is_independent(a.without(x).with(y)));
                    prop_assert!(exchanged);
                }
            }
        }
        prop_assert_eq!(k_subsets(m.len(), m.rank()).filter(|x| m.is_independent(*x)).count(), bases.len());
    }
}
