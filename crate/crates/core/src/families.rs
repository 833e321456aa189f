//! Families of small matroids used by the verification suites.

use rand::Rng;

use crate::catalog::{catalog, CatalogName};
use crate::johnson::{best_class, gs_class, sparse_paving_from_nonbases, trial_rng};
use crate::matroid::{Matroid, MatroidError};
use crate::subset::{k_subsets, Subset};

/// A named test matroid.
#[derive(Debug, Clone)]
pub struct Sample {
    pub name: String,
    pub matroid: Matroid,
}

impl Sample {
    pub fn new(name: impl Into<String>, matroid: Matroid) -> Self {
        Sample { name: name.into(), matroid }
    }
}

/// The standard catalog set, restricted to ground sets of at most `max_n` elements.
pub fn catalog_samples(max_n: usize) -> Vec<Sample> {
    CatalogName::standard_set()
        .into_iter()
        .map(|name| Sample::new(name.to_string(), name.build()))
        .filter(|s| s.matroid.len() <= max_n)
        .collect()
}

/// Rank-2 matroid with `loops` loops followed by parallel classes of the given sizes.
pub fn rank2_from_classes(loops: usize, class_sizes: &[usize]) -> Result<Matroid, MatroidError> {
    let mut class_of = vec![None; loops];
    for (c, &size) in class_sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat_n(Some(c), size));
    }
    let n = class_of.len();
    let bases: Vec<Subset> = k_subsets(n, 2)
        .filter(|p| {
            let v: Vec<usize> = p.iter().collect();
            matches!((class_of[v[0]], class_of[v[1]]), (Some(a), Some(b)) if a != b)
        })
        .collect();
    Matroid::new(n, 2, bases)
}

/// Simple rank-3 matroid whose only dependent triples lie on the given lines.
pub fn rank3_from_lines(n: usize, lines: &[Subset]) -> Result<Matroid, MatroidError> {
    let bases: Vec<Subset> = k_subsets(n, 3).filter(|t| !lines.iter().any(|l| t.is_subset_of(*l))).collect();
    Matroid::new(n, 3, bases)
}

/// Every rank-2 matroid with at most `max_n` elements, up to isomorphism.
pub fn rank2_family(max_n: usize) -> Vec<Sample> {
    fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max_part.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 2..=max_n.min(8) {
        for loops in 0..=n - 2 {
            for classes in partitions(n - loops, n - loops) {
                if classes.len() < 2 {
                    continue;
                }
                let m = rank2_from_classes(loops, &classes).expect("rank-2 class construction is valid");
                out.push(Sample::new(format!("rank2(loops={loops},classes={classes:?})"), m));
            }
        }
    }
    out
}

/// `count` sparse paving matroids from Graham–Sloane classes with `6 <= n <= min(9, max_n)`.
/// Sample `i` uses `trial_rng(seed, i)` to pick `n`, `r`, `k` and the members.
pub fn generated_sparse_paving(seed: u64, count: usize, max_n: usize) -> Vec<Sample> {
    let top = max_n.min(9);
    if top < 6 {
        return Vec::new();
    }
    (0..count)
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let n = rng.gen_range(6..=top);
            let r = rng.gen_range(2..=n - 2);
            let k = rng.gen_range(0..n);
            let class = gs_class(n, r, k).expect("2 <= r <= n - 2");
            let chosen: Vec<Subset> = class.members.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let m = sparse_paving_from_nonbases(n, r, &chosen).expect("class subsets are stable");
            Sample::new(format!("S({n},{r},{k})#{i}"), m)
        })
        .collect()
}

/// Rank-3 matroids: the rank-3 catalog entries, single-element contractions of
/// rank-4 catalog entries, line configurations, and generated sparse paving ones.
pub fn rank3_family(seed: u64, max_n: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = catalog_samples(max_n).into_iter().filter(|s| s.matroid.rank() == 3).collect();
    for name in ["V8", "MK(5)"] {
        let m = catalog(name).expect("catalog name");
        if m.len() > max_n {
            continue;
        }
        for e in [0, m.len() - 1] {
            out.push(Sample::new(format!("{name}/{}", e + 1), m.contract(Subset::singleton(e)).matroid));
        }
    }
    for (n, lines) in line_configurations() {
        if n <= max_n {
            let m = rank3_from_lines(n, &lines).expect("lines meet in at most one point");
            let desc: Vec<String> = lines.iter().map(Subset::to_string).collect();
            out.push(Sample::new(format!("lines({n};{})", desc.join(",")), m));
        }
    }
    for s in generated_sparse_paving(seed, 40, max_n) {
        if s.matroid.rank() == 3 {
            out.push(s);
        }
    }
    if max_n >= 7 {
        let (k, _) = best_class(7, 3).expect("valid rank");
        let full = sparse_paving_from_nonbases(7, 3, &gs_class(7, 3, k).expect("valid rank").members)
            .expect("classes are stable");
        out.push(Sample::new(format!("U(7,3,{k})"), full));
    }
    out
}

fn line_configurations() -> Vec<(usize, Vec<Subset>)> {
    let l = |v: &[usize]| Subset::from_labels(v.iter().copied());
    vec![
        // A long line plus one or two points off it.
        (5, vec![l(&[1, 2, 3, 4])]),
        (7, vec![l(&[1, 2, 3, 4, 5, 6])]),
        (8, vec![l(&[1, 2, 3, 4, 5, 6])]),
        // Two long lines through a common point.
        (7, vec![l(&[1, 2, 3, 4]), l(&[1, 5, 6, 7])]),
        // The non-Fano plane.
        (7, vec![l(&[1, 2, 3]), l(&[1, 4, 5]), l(&[1, 6, 7]), l(&[2, 4, 6]), l(&[2, 5, 7]), l(&[3, 4, 7])]),
        // Five lines on nine points.
        (9, vec![l(&[1, 2, 3]), l(&[4, 5, 6]), l(&[7, 8, 9]), l(&[1, 4, 7]), l(&[2, 5, 8])]),
    ]
}

/// A line of `points` points plus two points off it.
pub fn line_plus_two(points: usize) -> Matroid {
    rank3_from_lines(points + 2, &[Subset::full(points)]).expect("a single line is a valid configuration")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank2_construction() {
        let m = rank2_from_classes(1, &[2, 1, 1]).unwrap();
        assert_eq!((m.len(), m.rank(), m.loops()), (5, 2, Subset::from_labels([1])));
        assert_eq!(m.bases().len(), 5);
        assert!(rank2_family(5).iter().all(|s| s.matroid.rank() == 2));
    }

    #[test]
    fn generated_samples_are_reproducible() {
        let a = generated_sparse_paving(3, 10, 9);
        let b = generated_sparse_paving(3, 10, 9);
        assert_eq!(a.len(), 10);
        assert!(a.iter().zip(&b).all(|(x, y)| x.matroid == y.matroid && x.name == y.name));
    }

    #[test]
    fn rank3_family_is_rank3() {
        assert!(rank3_family(1, 17).iter().all(|s| s.matroid.rank() == 3));
    }
}
