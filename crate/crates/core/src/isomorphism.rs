//! Matroid isomorphism by backtracking over element bijections.
//!
//! Elements are first bucketed by a signature (loop flag, coloop flag, number of
//! bases containing the element, number of non-bases containing it); only
//! signature-preserving bijections are tried. A partial map is rejected as soon
//! as some non-basis of the first matroid has all its elements mapped and its
//! image is a basis of the second. Since both matroids have equally many
//! non-bases, a complete map that sends non-bases to non-bases is a bijection
//! on bases too.

use std::collections::HashSet;

use crate::matroid::{GroundMap, Matroid};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    is_loop: bool,
    is_coloop: bool,
    basis_degree: usize,
    non_basis_degree: usize,
}

fn signatures(m: &Matroid, non_bases: &[Subset]) -> Vec<Signature> {
    let loops = m.loops();
    let coloops = m.coloops();
    let degrees = m.element_degrees();
    let mut nb_degree = vec![0; m.len()];
    for x in non_bases {
        for i in x.iter() {
            nb_degree[i] += 1;
        }
    }
    (0..m.len())
        .map(|e| Signature {
            is_loop: loops.contains(e),
            is_coloop: coloops.contains(e),
            basis_degree: degrees[e],
            non_basis_degree: nb_degree[e],
        })
        .collect()
}

/// A bijection `σ` with `σ(B)` a basis of `other` exactly when `B` is a basis of `m`.
pub fn is_isomorphic(m: &Matroid, other: &Matroid) -> Option<GroundMap> {
    if m.len() != other.len() || m.rank() != other.rank() || m.bases().len() != other.bases().len() {
        return None;
    }
    let n = m.len();
    let nb_m = m.non_bases();
    let nb_o = other.non_bases();
    let sig_m = signatures(m, &nb_m);
    let sig_o = signatures(other, &nb_o);
    let mut sorted_m = sig_m.clone();
    let mut sorted_o = sig_o.clone();
    sorted_m.sort_unstable();
    sorted_o.sort_unstable();
    if sorted_m != sorted_o {
        return None;
    }

    // Assign elements from the rarest signature class first.
    let class_size = |s: &Signature| sorted_m.iter().filter(|t| *t == s).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (class_size(&sig_m[e]), e));
    let mut position = vec![0; n];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }

    // Non-bases of `m` become checkable once their last element is assigned.
    let mut checks: Vec<Vec<Subset>> = vec![Vec::new(); n];
    for x in &nb_m {
        if let Some(last) = x.iter().map(|i| position[i]).max() {
            checks[last].push(*x);
        }
    }

    let target: HashSet<Subset> = nb_o.into_iter().collect();
    let mut search = Search {
        order: &order,
        sig_m: &sig_m,
        sig_o: &sig_o,
        checks: &checks,
        target: &target,
        image: vec![usize::MAX; n],
        used: Subset::EMPTY,
    };
    search.extend(0).then(|| GroundMap::new(search.image))
}

struct Search<'a> {
    order: &'a [usize],
    sig_m: &'a [Signature],
    sig_o: &'a [Signature],
    checks: &'a [Vec<Subset>],
    target: &'a HashSet<Subset>,
    image: Vec<usize>,
    used: Subset,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        for f in 0..self.order.len() {
            if self.used.contains(f) || self.sig_o[f] != self.sig_m[e] {
                continue;
            }
            self.image[e] = f;
            self.used = self.used.with(f);
            let consistent = self.checks[depth].iter().all(|x| {
                let mapped = Subset::from_indices(x.iter().map(|i| self.image[i]));
                self.target.contains(&mapped)
            });
            if consistent && self.extend(depth + 1) {
                return true;
            }
            self.used = self.used.without(f);
            self.image[e] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn assert_witness(m: &Matroid, o: &Matroid, map: &GroundMap) {
        assert_eq!(&m.relabel(map), o);
    }

    #[test]
    fn permuted_uniform() {
        let u = catalog("U(2,4)").unwrap();
        let map = GroundMap::new(vec![2, 0, 3, 1]);
        let p = u.relabel(&map);
        let found = is_isomorphic(&u, &p).unwrap();
        assert_witness(&u, &p, &found);
    }

    #[test]
    fn p6_and_q6_differ() {
        assert!(is_isomorphic(&catalog("P6").unwrap(), &catalog("Q6").unwrap()).is_none());
    }

    #[test]
    fn two_labelings_of_k4_agree() {
        let a = catalog("MK4").unwrap();
        let b = catalog("MK(4)").unwrap();
        let map = is_isomorphic(&a, &b).unwrap();
        assert_witness(&a, &b, &map);
    }

    #[test]
    fn v8_is_self_dual() {
        let v8 = catalog("V8").unwrap();
        let map = is_isomorphic(&v8, &v8.dual()).unwrap();
        assert_witness(&v8, &v8.dual(), &map);
    }

    #[test]
    fn six_element_rank_three_family_is_pairwise_distinct() {
        let names = ["P6", "Q6", "R6", "W3", "MK4", "U(3,6)"];
        let ms: Vec<Matroid> = names.iter().map(|n| catalog(n).unwrap()).collect();
        for (i, a) in ms.iter().enumerate() {
            for (j, b) in ms.iter().enumerate() {
                assert_eq!(is_isomorphic(a, b).is_some(), i == j, "{} vs {}", names[i], names[j]);
            }
        }
    }
}
