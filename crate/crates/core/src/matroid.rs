//! Matroids stored by explicit basis lists.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::subset::{all_subsets, k_subsets, Subset, MAX_GROUND};

/// Ground sets up to this size get a precomputed rank table.
const RANK_TABLE_MAX: usize = 20;

/// Operations that enumerate every subset of the ground set refuse larger inputs.
pub const SUBSET_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("the basis collection is empty")]
    EmptyBases,
    #[error("basis {0} does not have cardinality {1}")]
    WrongCardinality(Subset, usize),
    #[error("rank {rank} exceeds ground set size {n}")]
    RankTooLarge { n: usize, rank: usize },
    #[error("ground set size {0} exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("basis {0} uses elements outside the ground set")]
    OutOfRange(Subset),
    #[error("basis {0} is listed twice")]
    DuplicateBasis(Subset),
    #[error("basis exchange fails for B1 = {basis} and x = {element}")]
    ExchangeViolation { basis: Subset, element: usize },
    #[error("ground set size {0} exceeds the subset enumeration cap of {SUBSET_ENUMERATION_CAP}")]
    SizeCapExceeded(usize),
    #[error("contracted set {0} and deleted set {1} overlap")]
    OverlappingSets(Subset, Subset),
    #[error("the matroid has rank zero")]
    RankZero,
}

/// A matroid on `{1, .., n}` given by its bases.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
    basis_set: HashSet<Subset>,
    rank_table: OnceLock<Option<Vec<u8>>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank == other.rank && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases.len())
            .finish()
    }
}

/// A closed set together with its rank. Orders by `(rank, elements)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub rank: usize,
    pub elements: Subset,
}

impl Flat {
    /// Whether this flat witnesses the dependence of `x`, i.e. `|x ∩ F| > r(F)`.
    pub fn covers(&self, x: Subset) -> bool {
        x.intersection(self.elements).len() > self.rank
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.elements, self.rank)
    }
}

/// An injective map between two ground sets, total on its source.
/// Serialized as the list of 1-based images of `1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundMap {
    images: Vec<usize>,
}

impl Serialize for GroundMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.images.iter().map(|i| i + 1))
    }
}

impl GroundMap {
    pub fn identity(n: usize) -> Self {
        GroundMap { images: (0..n).collect() }
    }

    /// Panics if `images` is not injective.
    pub fn new(images: Vec<usize>) -> Self {
        let mut seen = HashSet::new();
        assert!(images.iter().all(|i| seen.insert(*i)), "ground map must be injective");
        GroundMap { images }
    }

    pub fn source_len(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based element `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, s: Subset) -> Subset {
        Subset::from_indices(s.iter().map(|i| self.images[i]))
    }

    /// The image of the whole source ground set.
    pub fn range(&self) -> Subset {
        Subset::from_indices(self.images.iter().copied())
    }

    /// Composition `other ∘ self`.
    #[must_use]
    pub fn then(&self, other: &GroundMap) -> GroundMap {
        GroundMap { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    /// Inverse of a bijection onto `{0, .., len-1}`.
    pub fn inverse(&self) -> GroundMap {
        let mut images = vec![usize::MAX; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        GroundMap { images }
    }
}

/// `M / C \ D` together with the map from its elements back to the host.
#[derive(Debug, Clone)]
pub struct Minor {
    pub matroid: Matroid,
    /// Minor element `i` is host element `map.image(i)`.
    pub map: GroundMap,
}

/// `si(M)` with the parallel class behind each surviving element.
#[derive(Debug, Clone)]
pub struct Simplification {
    pub matroid: Matroid,
    /// Surviving element `i` is host element `map.image(i)`, the smallest of its class.
    pub map: GroundMap,
    pub classes: Vec<Subset>,
    pub loops: Subset,
}

impl Matroid {
    /// Checks the basis axioms and builds the matroid.
    pub fn new<I: IntoIterator<Item = Subset>>(n: usize, rank: usize, bases: I) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(n));
        }
        if rank > n {
            return Err(MatroidError::RankTooLarge { n, rank });
        }
        let ground = Subset::full(n);
        let mut list = Vec::new();
        let mut set = HashSet::new();
        for b in bases {
            if !b.is_subset_of(ground) {
                return Err(MatroidError::OutOfRange(b));
            }
            if b.len() != rank {
                return Err(MatroidError::WrongCardinality(b, rank));
            }
            if !set.insert(b) {
                return Err(MatroidError::DuplicateBasis(b));
            }
            list.push(b);
        }
        if list.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        list.sort_unstable();
        check_exchange(&list, &set)?;
        Ok(Matroid { n, rank, bases: list, basis_set: set, rank_table: OnceLock::new() })
    }

    /// Builds a matroid whose bases are all `rank`-subsets except `non_bases`.
    pub fn from_non_bases<I: IntoIterator<Item = Subset>>(
        n: usize,
        rank: usize,
        non_bases: I,
    ) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(n));
        }
        if rank > n {
            return Err(MatroidError::RankTooLarge { n, rank });
        }
        let excluded: HashSet<Subset> = non_bases.into_iter().collect();
        for x in &excluded {
            if !x.is_subset_of(Subset::full(n)) {
                return Err(MatroidError::OutOfRange(*x));
            }
            if x.len() != rank {
                return Err(MatroidError::WrongCardinality(*x, rank));
            }
        }
        Matroid::new(n, rank, k_subsets(n, rank).filter(|s| !excluded.contains(s)))
    }

    /// Builds from bases already known to satisfy the axioms (derived constructions only).
    pub(crate) fn from_trusted(n: usize, rank: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        let basis_set = bases.iter().copied().collect();
        Matroid { n, rank, bases, basis_set, rank_table: OnceLock::new() }
    }

    /// Ground set size.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Bases in colex order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.basis_set.contains(&s)
    }

    /// The `r`-subsets that are not bases, in colex order.
    pub fn non_bases(&self) -> Vec<Subset> {
        k_subsets(self.n, self.rank).filter(|s| !self.is_basis(*s)).collect()
    }

    fn table(&self) -> Option<&Vec<u8>> {
        self.rank_table
            .get_or_init(|| (self.n <= RANK_TABLE_MAX).then(|| build_rank_table(self.n, &self.bases)))
            .as_ref()
    }

    /// `r_M(S) = max |S ∩ B|` over bases `B`.
    pub fn rank_of(&self, s: Subset) -> usize {
        let s = s.intersection(self.ground());
        match self.table() {
            Some(t) => t[s.bits() as usize] as usize,
            None => self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0),
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn closure_of(&self, s: Subset) -> Subset {
        let s = s.intersection(self.ground());
        let r = self.rank_of(s);
        (0..self.n).filter(|&e| !s.contains(e) && self.rank_of(s.with(e)) == r).fold(s, |acc, e| acc.with(e))
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure_of(s) == s
    }

    /// The flat spanned by `s`.
    pub fn flat_of(&self, s: Subset) -> Flat {
        let elements = self.closure_of(s);
        Flat { rank: self.rank_of(elements), elements }
    }

    pub fn loops(&self) -> Subset {
        self.closure_of(Subset::EMPTY)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Subset {
        self.bases.iter().fold(self.ground(), |acc, b| acc.intersection(*b))
    }

    /// Number of bases containing each element.
    pub fn element_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for b in &self.bases {
            for i in b.iter() {
                deg[i] += 1;
            }
        }
        deg
    }

    /// Every flat, sorted by `(rank, elements)`.
    pub fn all_flats(&self) -> Result<Vec<Flat>, MatroidError> {
        if self.n > SUBSET_ENUMERATION_CAP {
            return Err(MatroidError::SizeCapExceeded(self.n));
        }
        let mut flats: Vec<Flat> = all_subsets(self.n)
            .filter(|s| self.is_flat(*s))
            .map(|s| Flat { rank: self.rank_of(s), elements: s })
            .collect();
        flats.sort_unstable();
        Ok(flats)
    }

    /// Flats of rank 2, found as closures of pairs. Works beyond the enumeration cap.
    pub fn lines(&self) -> Vec<Flat> {
        let mut lines: Vec<Flat> =
            k_subsets(self.n, 2).filter(|p| self.rank_of(*p) == 2).map(|p| self.flat_of(p)).collect();
        lines.sort_unstable();
        lines.dedup();
        lines
    }

    /// Rank-`r - 1` flats that are also circuits.
    pub fn circuit_hyperplanes(&self) -> Vec<Subset> {
        self.non_bases().into_iter().filter(|x| self.is_circuit_hyperplane(*x)).collect()
    }

    /// `h` is a dependent `r`-set that is closed and all of whose `(r-1)`-subsets are independent.
    pub fn is_circuit_hyperplane(&self, h: Subset) -> bool {
        if self.rank == 0 || h.len() != self.rank || self.is_basis(h) {
            return false;
        }
        self.is_flat(h) && h.iter().all(|e| self.is_independent(h.without(e)))
    }

    /// Complements of the bases.
    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        let bases = self.bases.iter().map(|b| b.complement(self.n)).collect::<Vec<_>>();
        debug_assert!(bases.iter().all(|b| b.is_subset_of(g)));
        Matroid::from_trusted(self.n, self.n - self.rank, bases)
    }

    /// Rank in the dual matroid: `r*(S) = |S| + r(E \ S) - r(M)`.
    pub fn corank_of(&self, s: Subset) -> usize {
        s.len() + self.rank_of(s.complement(self.n)) - self.rank
    }

    /// Closure in the dual matroid.
    pub fn coclosure_of(&self, s: Subset) -> Subset {
        let r = self.corank_of(s);
        (0..self.n).filter(|&e| !s.contains(e) && self.corank_of(s.with(e)) == r).fold(s, |acc, e| acc.with(e))
    }

    /// `M / contract \ delete`, relabeled onto `{1, .., n - |C| - |D|}` in increasing order.
    pub fn minor(&self, contract: Subset, delete: Subset) -> Result<Minor, MatroidError> {
        if !contract.is_disjoint(delete) {
            return Err(MatroidError::OverlappingSets(contract, delete));
        }
        let g = self.ground();
        let contract = contract.intersection(g);
        let delete = delete.intersection(g);
        let kept = g.difference(contract.union(delete));

        let keep_rank = self.bases.iter().map(|b| b.difference(delete).len()).max().unwrap_or(0);
        let contract_rank = self.rank_of(contract);
        let bases: Vec<Subset> = self
            .bases
            .iter()
            .filter(|b| b.difference(delete).len() == keep_rank && b.intersection(contract).len() == contract_rank)
            .map(|b| b.intersection(kept).compress(kept))
            .collect();
        let matroid = Matroid::from_trusted(kept.len(), keep_rank - contract_rank, bases);
        Ok(Minor { matroid, map: GroundMap::new(kept.iter().collect()) })
    }

    pub fn delete(&self, delete: Subset) -> Minor {
        self.minor(Subset::EMPTY, delete).expect("empty contraction never overlaps")
    }

    pub fn contract(&self, contract: Subset) -> Minor {
        self.minor(contract, Subset::EMPTY).expect("empty deletion never overlaps")
    }

    /// Restriction to `keep`.
    pub fn restrict(&self, keep: Subset) -> Minor {
        self.delete(self.ground().difference(keep))
    }

    /// Removes loops and keeps the smallest element of each parallel class.
    pub fn simplify(&self) -> Result<Simplification, MatroidError> {
        if self.rank == 0 {
            return Err(MatroidError::RankZero);
        }
        let loops = self.loops();
        let mut assigned = loops;
        let mut classes = Vec::new();
        for e in 0..self.n {
            if assigned.contains(e) {
                continue;
            }
            let class = self.closure_of(Subset::singleton(e)).difference(loops);
            assigned = assigned.union(class);
            classes.push(class);
        }
        let reps = Subset::from_indices(classes.iter().map(|c| c.first().expect("classes are nonempty")));
        let Minor { matroid, map } = self.restrict(reps);
        Ok(Simplification { matroid, map, classes, loops })
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && (0..self.n).all(|e| self.closure_of(Subset::singleton(e)).len() == 1)
    }

    /// Adds the circuit-hyperplane `h` to the bases. Callers check the hypothesis.
    pub(crate) fn with_extra_basis(&self, h: Subset) -> Matroid {
        let mut bases = self.bases.clone();
        bases.push(h);
        Matroid::from_trusted(self.n, self.rank, bases)
    }

    /// Applies a relabeling `σ` of the ground set, giving the matroid with bases `σ(B)`.
    pub fn relabel(&self, map: &GroundMap) -> Matroid {
        Matroid::from_trusted(self.n, self.rank, self.bases.iter().map(|b| map.apply(*b)).collect())
    }

    /// Independent sets of size `k` in colex order.
    pub fn independent_sets(&self, k: usize) -> impl Iterator<Item = Subset> + '_ {
        k_subsets(self.n, k).filter(move |s| self.is_independent(*s))
    }
}

fn build_rank_table(n: usize, bases: &[Subset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut independent = vec![false; size];
    for b in bases {
        independent[b.bits() as usize] = true;
    }
    for m in (1..size).rev() {
        if independent[m] {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                independent[m ^ bit] = true;
                rest ^= bit;
            }
        }
    }
    let mut rank = vec![0u8; size];
    for m in 1..size {
        if independent[m] {
            rank[m] = m.count_ones() as u8;
        } else {
            let mut best = 0;
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                best = best.max(rank[m ^ bit]);
                rest ^= bit;
            }
            rank[m] = best;
        }
    }
    rank
}

fn check_exchange(bases: &[Subset], set: &HashSet<Subset>) -> Result<(), MatroidError> {
    for &b1 in bases {
        for &b2 in bases {
            let only_b2 = b2.difference(b1);
            for x in b1.difference(b2).iter() {
                let without = b1.without(x);
                if !only_b2.iter().any(|y| set.contains(&without.with(y))) {
                    return Err(MatroidError::ExchangeViolation { basis: b1, element: x + 1 });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::subset::k_subsets;

    fn s(labels: &[usize]) -> Subset {
        Subset::from_labels(labels.iter().copied())
    }

    #[test]
    fn accepts_uniform_and_loops() {
        let u24 = Matroid::new(4, 2, k_subsets(4, 2)).unwrap();
        assert_eq!(u24.bases().len(), 6);
        let m = Matroid::new(3, 1, [s(&[1]), s(&[2])]).unwrap();
        assert_eq!(m.loops(), s(&[3]));
        assert_eq!(m.closure_of(Subset::EMPTY), s(&[3]));
    }

    #[test]
    fn rejects_exchange_violation() {
        let err = Matroid::new(4, 2, [s(&[1, 2]), s(&[3, 4])]).unwrap_err();
        // B1 = {1,2}, x = 1: neither {2,3} nor {2,4} is a basis.
        assert_eq!(err, MatroidError::ExchangeViolation { basis: s(&[1, 2]), element: 1 });
    }

    #[test]
    fn rejects_malformed_collections() {
        assert_eq!(Matroid::new(3, 1, []).unwrap_err(), MatroidError::EmptyBases);
        assert!(matches!(Matroid::new(3, 2, [s(&[1])]), Err(MatroidError::WrongCardinality(..))));
        assert!(matches!(Matroid::new(3, 1, [s(&[1]), s(&[1])]), Err(MatroidError::DuplicateBasis(_))));
        assert!(matches!(Matroid::new(2, 1, [s(&[3])]), Err(MatroidError::OutOfRange(_))));
    }

    #[test]
    fn rank_and_closure_examples() {
        let u24 = catalog("U(2,4)").unwrap();
        assert_eq!(u24.rank_of(s(&[1, 2, 3])), 2);
        assert_eq!(u24.rank_of(Subset::EMPTY), 0);
        assert_eq!(u24.closure_of(s(&[1])), s(&[1]));

        // Catalog M(K4) has triangles {1,2,3}, {1,4,5}, {3,4,6}, {2,5,6}.
        let k4 = catalog("MK4").unwrap();
        assert_eq!(k4.rank_of(s(&[1, 2, 3])), 2);
        assert_eq!(k4.closure_of(s(&[1, 2])), s(&[1, 2, 3]));
    }

    #[test]
    fn flat_counts() {
        assert_eq!(catalog("U(2,4)").unwrap().all_flats().unwrap().len(), 6);
        let k5 = catalog("MK(5)").unwrap();
        let flats = k5.all_flats().unwrap();
        assert_eq!(flats.len(), 52);
        assert_eq!(flats.iter().filter(|f| f.rank == 3).count(), 15);
    }

    #[test]
    fn size_cap_is_enforced() {
        let big = Matroid::new(17, 1, (0..17).map(Subset::singleton)).unwrap();
        assert_eq!(big.all_flats().unwrap_err(), MatroidError::SizeCapExceeded(17));
        // Lines do not need the cap.
        assert!(big.lines().is_empty());
    }

    #[test]
    fn duality() {
        let u25 = catalog("U(2,5)").unwrap();
        assert_eq!(u25.dual(), catalog("U(3,5)").unwrap());
        let zero = Matroid::new(3, 0, [Subset::EMPTY]).unwrap();
        assert_eq!(zero.dual(), catalog("U(3,3)").unwrap());
        let v8 = catalog("V8").unwrap();
        assert_eq!(v8.dual().dual(), v8);
    }

    #[test]
    fn minors() {
        let u36 = catalog("U(3,6)").unwrap();
        assert_eq!(u36.minor(Subset::EMPTY, Subset::EMPTY).unwrap().matroid, u36);
        assert_eq!(u36.contract(s(&[1])).matroid, catalog("U(2,5)").unwrap());
        assert!(matches!(u36.minor(s(&[1]), s(&[1, 2])), Err(MatroidError::OverlappingSets(..))));

        // Contracting edge 1 of K4 merges its two triangles' other edges pairwise.
        let k4 = catalog("MK4").unwrap();
        let m = k4.contract(s(&[1])).matroid;
        assert_eq!((m.len(), m.rank()), (5, 2));
        let si = m.simplify().unwrap();
        let nontrivial: Vec<_> = si.classes.iter().filter(|c| c.len() > 1).collect();
        assert_eq!(nontrivial.len(), 2);
        assert!(si.loops.is_empty());
    }

    #[test]
    fn deleting_a_coloop_drops_the_rank() {
        let m = Matroid::new(3, 2, [s(&[1, 3]), s(&[2, 3])]).unwrap();
        assert_eq!(m.coloops(), s(&[3]));
        let d = m.delete(s(&[3])).matroid;
        assert_eq!(d.rank(), 1);
        assert_eq!(d.bases(), &[s(&[1]), s(&[2])]);
    }

    #[test]
    fn simplification() {
        // Rank 2: loop 5, parallel pair {1,2}, points 3 and 4.
        let bases = [s(&[1, 3]), s(&[1, 4]), s(&[2, 3]), s(&[2, 4]), s(&[3, 4])];
        let m = Matroid::new(5, 2, bases).unwrap();
        let si = m.simplify().unwrap();
        assert_eq!(si.matroid, catalog("U(2,3)").unwrap());
        assert_eq!(si.map.images(), &[0, 2, 3]);
        assert_eq!(si.loops, s(&[5]));

        let u13 = catalog("U(1,3)").unwrap();
        assert_eq!(u13.simplify().unwrap().matroid, catalog("U(1,1)").unwrap());
        let u00 = catalog("U(0,2)").unwrap();
        assert_eq!(u00.simplify().unwrap_err(), MatroidError::RankZero);

        let u24 = catalog("U(2,4)").unwrap();
        let si = u24.simplify().unwrap();
        assert_eq!(si.matroid, u24);
        assert_eq!(si.map, GroundMap::identity(4));
    }

    #[test]
    fn circuit_hyperplanes_of_sparse_paving() {
        let q6 = catalog("Q6").unwrap();
        assert_eq!(q6.circuit_hyperplanes(), vec![s(&[1, 2, 3]), s(&[1, 4, 5])]);
        assert!(!q6.is_circuit_hyperplane(s(&[1, 2, 4])));
    }
}
