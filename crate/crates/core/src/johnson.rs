//! Stable sets of the Johnson graph, Graham–Sloane classes, sparse paving
//! matroids built from them, spikes, and the minor-freeness experiments.
//!
//! `J(n,r)` has the `r`-subsets of `[n]` as vertices, adjacent when they share
//! `r - 1` elements. The Graham–Sloane class `U(n,r,k)` collects the `r`-sets
//! whose labels sum to `k` mod `n`; no two of them are adjacent.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{catalog, CatalogName};
use crate::cover::{kappa_exact, CoverError};
use crate::lp::serialize_rational;
use crate::matroid::{Matroid, MatroidError};
use crate::minors::has_minor;
use crate::subset::{big_binomial, k_subsets, Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JohnsonError {
    #[error("need 0 < r < n, got n = {n}, r = {r}")]
    BadRank { n: usize, r: usize },
    #[error("{0} and {1} are adjacent in the Johnson graph")]
    NotStable(Subset, Subset),
    #[error("invalid set system: {0}")]
    BadSystem(String),
    #[error("n must be odd, got {0}")]
    EvenN(usize),
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

fn check_rank(n: usize, r: usize) -> Result<(), JohnsonError> {
    if r == 0 || r >= n || n > MAX_GROUND {
        return Err(JohnsonError::BadRank { n, r });
    }
    Ok(())
}

/// The Graham–Sloane label `Σ x mod n` of a set of 1-based labels.
pub fn gs_label(x: Subset, n: usize) -> usize {
    x.label_sum() % n
}

/// `U(n,r,k)`: the `r`-subsets of `[n]` with label `k`, in colex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GSClass {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub members: Vec<Subset>,
}

pub fn gs_class(n: usize, r: usize, k: usize) -> Result<GSClass, JohnsonError> {
    check_rank(n, r)?;
    let k = k % n;
    let members = k_subsets(n, r).filter(|x| gs_label(*x, n) == k).collect();
    let class = GSClass { n, r, k, members };
    debug_assert!(adjacent_pair(&class.members).is_none());
    Ok(class)
}

/// Two members sharing all but one element, if any.
pub fn adjacent_pair(sets: &[Subset]) -> Option<(Subset, Subset)> {
    for (i, x) in sets.iter().enumerate() {
        for y in &sets[i + 1..] {
            if x.len() == y.len() && x.intersection(*y).len() + 1 == x.len() {
                return Some((*x, *y));
            }
        }
    }
    None
}

/// The matroid whose non-bases are exactly `u`, which must be stable in `J(n,r)`.
pub fn sparse_paving_from_nonbases(n: usize, r: usize, u: &[Subset]) -> Result<Matroid, JohnsonError> {
    check_rank(n, r)?;
    if let Some((x, y)) = adjacent_pair(u) {
        return Err(JohnsonError::NotStable(x, y));
    }
    Ok(Matroid::from_non_bases(n, r, u.iter().copied())?)
}

fn check_probability(p: f64) -> Result<(), JohnsonError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(JohnsonError::BadProbability(p));
    }
    Ok(())
}

fn sample_with(n: usize, r: usize, class: &GSClass, p: f64, rng: &mut ChaCha8Rng) -> Result<Matroid, JohnsonError> {
    let chosen: Vec<Subset> = class.members.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    sparse_paving_from_nonbases(n, r, &chosen)
}

/// A member of `S(n,r,k)`: each class member becomes a non-basis with probability
/// `p`, one Bernoulli draw per member in colex order from ChaCha8 seeded with `seed`.
pub fn sample_class_matroid(n: usize, r: usize, k: usize, p: f64, seed: u64) -> Result<Matroid, JohnsonError> {
    check_probability(p)?;
    let class = gs_class(n, r, k)?;
    sample_with(n, r, &class, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A largest class, smallest `k` on ties.
pub fn best_class(n: usize, r: usize) -> Result<(usize, usize), JohnsonError> {
    check_rank(n, r)?;
    let mut sizes = vec![0usize; n];
    for x in k_subsets(n, r) {
        sizes[gs_label(x, n)] += 1;
    }
    let best = (0..n).max_by_key(|&k| (sizes[k], std::cmp::Reverse(k))).expect("n > 0");
    Ok((best, sizes[best]))
}

/// `(G, D)` with `G = [n]` and no two members of `D` at symmetric difference 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSystem {
    pub n: usize,
    pub sets: Vec<Subset>,
}

impl SetSystem {
    pub fn new(n: usize, mut sets: Vec<Subset>) -> Result<Self, JohnsonError> {
        if !(3..=MAX_GROUND / 2).contains(&n) {
            return Err(JohnsonError::BadSystem(format!("ground set size {n} outside 3..={}", MAX_GROUND / 2)));
        }
        sets.sort_unstable();
        sets.dedup();
        if let Some(d) = sets.iter().find(|d| !d.is_subset_of(Subset::full(n))) {
            return Err(JohnsonError::BadSystem(format!("{d} is not a subset of [{n}]")));
        }
        for (i, d1) in sets.iter().enumerate() {
            if let Some(d2) = sets[i + 1..].iter().find(|d2| d1.symmetric_difference(**d2).len() == 1) {
                return Err(JohnsonError::BadSystem(format!("{d1} and {d2} differ in exactly one element")));
            }
        }
        Ok(SetSystem { n, sets })
    }

    /// All `k`-subsets of `[n]`.
    pub fn all_k_subsets(n: usize, k: usize) -> Result<Self, JohnsonError> {
        SetSystem::new(n, k_subsets(n.min(MAX_GROUND), k).collect())
    }
}

/// `T(D) = {a_i : i ∈ D} ∪ {b_j : j ∉ D}` with `a_i = i` and `b_j = n + j`.
pub fn transversal(n: usize, d: Subset) -> Subset {
    let complement = d.complement(n);
    d.union(Subset::from_bits(complement.bits() << n))
}

/// The leg `{a_i, b_i}`, 0-based `i`.
pub fn leg(n: usize, i: usize) -> Subset {
    Subset::singleton(i).with(n + i)
}

/// The spike `Λ(S)`: an `n`-set of the `2n` elements is a basis iff it contains
/// at most one full leg and is not a dependent transversal.
pub fn spike(s: &SetSystem) -> Result<Matroid, JohnsonError> {
    let n = s.n;
    let legs: Vec<Subset> = (0..n).map(|i| leg(n, i)).collect();
    let dependent: Vec<Subset> = s.sets.iter().map(|d| transversal(n, *d)).collect();
    let bases: Vec<Subset> = k_subsets(2 * n, n)
        .filter(|x| legs.iter().filter(|l| l.is_subset_of(*x)).count() <= 1 && !dependent.contains(x))
        .collect();
    Ok(Matroid::new(2 * n, n, bases)?)
}

fn is_circuit(m: &Matroid, c: Subset) -> bool {
    !m.is_independent(c) && c.iter().all(|e| m.is_independent(c.without(e)))
}

/// Every union of two legs is a circuit and a cocircuit, and `T(X)` is dependent
/// exactly for `X ∈ D` (checked over all `X ⊆ [n]`).
pub fn spike_conditions_hold(m: &Matroid, s: &SetSystem) -> bool {
    let n = s.n;
    let dual = m.dual();
    let legs_ok = k_subsets(n, 2).all(|pair| {
        let mut it = pair.iter();
        let (i, j) = (it.next().unwrap(), it.next().unwrap());
        let c = leg(n, i).union(leg(n, j));
        is_circuit(m, c) && is_circuit(&dual, c)
    });
    let transversals_ok =
        (0u32..1 << n).map(Subset::from_bits).all(|x| m.is_independent(transversal(n, x)) != s.sets.contains(&x));
    legs_ok && transversals_ok
}

/// Trial `i` of an experiment draws from ChaCha8 seeded with `seed` on stream `i`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mk4Report {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub trials: usize,
    pub p: f64,
    pub seed: u64,
    /// Number of non-bases of each sampled matroid.
    pub non_bases: Vec<usize>,
    /// Trials whose matroid has an `M(K4)`-minor.
    pub failures: Vec<usize>,
}

/// Samples `trials` matroids from `S(n,r,k)` and records any with an `M(K4)`-minor.
pub fn mk4_free_experiment(
    n: usize,
    r: usize,
    k: usize,
    trials: usize,
    p: f64,
    seed: u64,
) -> Result<Mk4Report, JohnsonError> {
    if n.is_multiple_of(2) {
        return Err(JohnsonError::EvenN(n));
    }
    check_probability(p)?;
    let class = gs_class(n, r, k)?;
    let k4 = CatalogName::MK4.build();
    let mut report = Mk4Report { n, r, k: class.k, trials, p, seed, non_bases: Vec::new(), failures: Vec::new() };
    for trial in 0..trials {
        let m = sample_with(n, r, &class, p, &mut trial_rng(seed, trial))?;
        report.non_bases.push(m.non_bases().len());
        if has_minor(&m, &k4).is_some() {
            report.failures.push(trial);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct V8Report {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub class_size: usize,
    pub has_v8_minor: bool,
    pub kappa: usize,
    /// `C(n,r) / n`.
    #[serde(serialize_with = "serialize_rational")]
    pub lower_bound: BigRational,
}

impl V8Report {
    pub fn passed(&self) -> bool {
        !self.has_v8_minor
            && self.kappa == self.class_size
            && BigRational::from_integer(BigInt::from(self.kappa)) >= self.lower_bound
    }
}

/// Builds the sparse paving matroid of the largest class and checks it.
pub fn v8_free_check(n: usize, r: usize) -> Result<V8Report, JohnsonError> {
    if n.is_multiple_of(2) {
        return Err(JohnsonError::EvenN(n));
    }
    let (k, class_size) = best_class(n, r)?;
    let m = sparse_paving_from_nonbases(n, r, &gs_class(n, r, k)?.members)?;
    let v8 = catalog("V8").expect("V8 is in the catalog");
    let has_v8_minor = has_minor(&m, &v8).is_some();
    let kappa = kappa_exact(&m)?.value;
    let lower_bound = BigRational::new(BigInt::from(big_binomial(n as u64, r as u64)), BigInt::from(n));
    Ok(V8Report { n, r, k, class_size, has_v8_minor, kappa, lower_bound })
}

/// Counts from an exhaustive pass over every `U ⊆ C([n], r)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StableSetCensus {
    pub subsets: u64,
    /// Sets stable in `J(n,r)`.
    pub stable: u64,
    /// Sets whose complement is the basis set of a sparse paving matroid.
    pub sparse_paving: u64,
    /// Sets with both properties.
    pub both: u64,
}

impl StableSetCensus {
    pub fn equivalence_holds(&self) -> bool {
        self.stable == self.both && self.sparse_paving == self.both
    }
}

/// Every non-basis is a circuit-hyperplane.
pub fn is_sparse_paving(m: &Matroid) -> bool {
    m.non_bases().into_iter().all(|x| m.is_circuit_hyperplane(x))
}

/// Checks both directions of "stable in `J(n,r)` iff the complement is the basis
/// set of a sparse paving matroid" over all `2^C(n,r)` sets. Needs `C(n,r) <= 24`.
pub fn stable_set_census(n: usize, r: usize) -> Result<StableSetCensus, JohnsonError> {
    check_rank(n, r)?;
    let all: Vec<Subset> = k_subsets(n, r).collect();
    if all.len() > 24 {
        return Err(JohnsonError::BadRank { n, r });
    }
    let mut census = StableSetCensus::default();
    for mask in 0u64..1 << all.len() {
        let u: Vec<Subset> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let stable = adjacent_pair(&u).is_none();
        let sparse_paving = Matroid::from_non_bases(n, r, u.iter().copied()).is_ok_and(|m| is_sparse_paving(&m));
        census.subsets += 1;
        census.stable += u64::from(stable);
        census.sparse_paving += u64::from(sparse_paving);
        census.both += u64::from(stable && sparse_paving);
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::is_isomorphic;

    fn sets(list: &[&[usize]]) -> Vec<Subset> {
        list.iter().map(|s| Subset::from_labels(s.iter().copied())).collect()
    }

    #[test]
    fn class_of_seven_three_zero() {
        let class = gs_class(7, 3, 0).unwrap();
        let mut expected = sets(&[&[1, 2, 4], &[3, 5, 6], &[1, 6, 7], &[2, 5, 7], &[3, 4, 7]]);
        expected.sort_unstable();
        assert_eq!(class.members, expected);
        for k in 0..7 {
            assert_eq!(gs_class(7, 3, k).unwrap().members.len(), 5);
        }
        assert_eq!(gs_label(Subset::from_labels([1, 2, 3]), 7), 6);
        assert_eq!(gs_class(4, 4, 0), Err(JohnsonError::BadRank { n: 4, r: 4 }));
    }

    #[test]
    fn sparse_paving_examples() {
        assert_eq!(sparse_paving_from_nonbases(6, 3, &[]).unwrap(), catalog("U(3,6)").unwrap());
        let r6 = sparse_paving_from_nonbases(6, 3, &sets(&[&[1, 2, 3], &[4, 5, 6]])).unwrap();
        assert!(is_isomorphic(&r6, &catalog("R6").unwrap()).is_some());
        let bad = sets(&[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(sparse_paving_from_nonbases(6, 3, &bad), Err(JohnsonError::NotStable(bad[0], bad[1])));
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_class_matroid(7, 3, 0, 0.0, 5).unwrap(), catalog("U(3,7)").unwrap());
        let full = sparse_paving_from_nonbases(7, 3, &gs_class(7, 3, 0).unwrap().members).unwrap();
        assert_eq!(sample_class_matroid(7, 3, 0, 1.0, 5).unwrap(), full);
        assert_eq!(sample_class_matroid(9, 4, 2, 0.5, 7).unwrap(), sample_class_matroid(9, 4, 2, 0.5, 7).unwrap());
        assert_eq!(sample_class_matroid(7, 3, 0, 1.5, 5), Err(JohnsonError::BadProbability(1.5)));
    }

    #[test]
    fn best_classes() {
        assert_eq!(best_class(7, 3).unwrap().1, 5);
        assert!(best_class(9, 4).unwrap().1 >= 14);
        assert!(best_class(4, 2).unwrap().1 >= 2);
    }

    #[test]
    fn spike_on_four_legs() {
        let s = SetSystem::all_k_subsets(4, 2).unwrap();
        let m = spike(&s).unwrap();
        assert_eq!((m.len(), m.rank(), m.bases().len(), m.non_bases().len()), (8, 4, 58, 12));
        assert!(spike_conditions_hold(&m, &s));
        assert_eq!(transversal(4, Subset::from_labels([1, 2])), Subset::from_labels([1, 2, 7, 8]));
    }

    #[test]
    fn free_spike_validates() {
        let s = SetSystem::new(3, vec![]).unwrap();
        let m = spike(&s).unwrap();
        assert!(spike_conditions_hold(&m, &s));
        assert_eq!(m.bases().len(), 20);
    }

    #[test]
    fn set_system_rejects_close_pairs() {
        let bad = SetSystem::new(4, sets(&[&[1, 2], &[1, 2, 3]]));
        assert!(matches!(bad, Err(JohnsonError::BadSystem(_))));
    }

    #[test]
    fn stable_set_equivalence_on_five_two() {
        let census = stable_set_census(5, 2).unwrap();
        assert_eq!(census.subsets, 1024);
        assert!(census.equivalence_holds());
    }

    #[test]
    fn experiments_reject_even_n() {
        assert_eq!(mk4_free_experiment(6, 3, 0, 1, 0.5, 1), Err(JohnsonError::EvenN(6)));
        assert_eq!(v8_free_check(8, 4), Err(JohnsonError::EvenN(8)));
    }

    #[test]
    fn v8_check_on_seven_three() {
        let report = v8_free_check(7, 3).unwrap();
        assert!(report.passed());
        assert_eq!(report.kappa, 5);
    }
}
