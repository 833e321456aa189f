//! Flat covers: verification, exact minimum covers, structured constructions
//! and the transforms that move covers between a matroid and its minors.
//!
//! A flat `F` covers an `r`-set `X` when `|X ∩ F| > r(F)`; a flat cover covers
//! every non-basis. Only flats of rank below `r(M)` can cover anything.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::DualCertificate;
use crate::matroid::{Flat, Matroid, MatroidError};
use crate::setcover::{max_packing, min_cover, CoverProblem};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("{0} is not a flat of the matroid")]
    NotAFlat(Flat),
    #[error("the collection is not a flat cover: non-basis {0} is uncovered")]
    NotACover(Subset),
    #[error("{0} is not a circuit-hyperplane")]
    NotACircuitHyperplane(Subset),
    #[error("element {0} is a loop or a coloop")]
    LoopOrColoop(usize),
    #[error("element {0} is not in the ground set")]
    NoSuchElement(usize),
    #[error("expected a rank-{expected} matroid, got rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// A collection of flats of one matroid. Serializes as a list of `{elements, rank}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlatCover {
    pub flats: Vec<Flat>,
}

impl FlatCover {
    pub fn new(flats: Vec<Flat>) -> Self {
        FlatCover { flats }
    }

    /// Sorted, deduplicated, and stripped of flats that cover no non-basis of `m`.
    pub fn trimmed(self, m: &Matroid) -> FlatCover {
        let non_bases = m.non_bases();
        let set: BTreeSet<Flat> = self.flats.into_iter().filter(|f| non_bases.iter().any(|x| f.covers(*x))).collect();
        FlatCover { flats: set.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }
}

/// Outcome of [`is_flat_cover`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverCheck {
    Covers,
    Uncovered(Subset),
}

impl CoverCheck {
    pub fn holds(self) -> bool {
        self == CoverCheck::Covers
    }
}

/// Checks that every member is a flat with the right rank, then looks for an
/// uncovered non-basis (the first in colex order).
pub fn is_flat_cover(m: &Matroid, z: &FlatCover) -> Result<CoverCheck, CoverError> {
    for f in &z.flats {
        if !f.elements.is_subset_of(m.ground()) || !m.is_flat(f.elements) || m.rank_of(f.elements) != f.rank {
            return Err(CoverError::NotAFlat(*f));
        }
    }
    Ok(m.non_bases()
        .into_iter()
        .find(|x| !z.flats.iter().any(|f| f.covers(*x)))
        .map_or(CoverCheck::Covers, CoverCheck::Uncovered))
}

fn require_cover(m: &Matroid, z: &FlatCover) -> Result<(), CoverError> {
    match is_flat_cover(m, z)? {
        CoverCheck::Covers => Ok(()),
        CoverCheck::Uncovered(x) => Err(CoverError::NotACover(x)),
    }
}

/// The covering instance of a matroid: non-bases against the flats that cover at least one.
#[derive(Debug, Clone)]
pub struct CoverSystem {
    pub non_bases: Vec<Subset>,
    pub flats: Vec<Flat>,
    pub problem: CoverProblem,
}

impl CoverSystem {
    pub fn new(m: &Matroid) -> Result<Self, MatroidError> {
        let non_bases = m.non_bases();
        let flats: Vec<Flat> = m
            .all_flats()?
            .into_iter()
            .filter(|f| f.rank < m.rank() && non_bases.iter().any(|x| f.covers(*x)))
            .collect();
        let sets = flats
            .iter()
            .map(|f| {
                let mut b = fixedbitset::FixedBitSet::with_capacity(non_bases.len());
                for (i, x) in non_bases.iter().enumerate() {
                    if f.covers(*x) {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        let problem = CoverProblem::new(non_bases.len(), sets);
        Ok(CoverSystem { non_bases, flats, problem })
    }
}

/// `κ(M)` with a minimum cover and, when the integer dual reaches it, a 0/1 certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaResult {
    pub value: usize,
    pub cover: FlatCover,
    #[serde(rename = "certificate", skip_serializing_if = "Option::is_none")]
    pub optimality_certificate: Option<DualCertificate>,
}

pub fn kappa_exact(m: &Matroid) -> Result<KappaResult, CoverError> {
    let system = CoverSystem::new(m)?;
    let (chosen, _) = min_cover(&system.problem).expect("closures of non-bases cover everything");
    let cover = FlatCover::new(chosen.iter().map(|&i| system.flats[i]).collect());
    let value = cover.len();
    let (packing, _) = max_packing(&system.problem, Some(value));
    let optimality_certificate = (packing.len() == value).then(|| DualCertificate {
        weights: packing.iter().map(|&i| (system.non_bases[i], BigRational::one())).collect(),
    });
    Ok(KappaResult { value, cover, optimality_certificate })
}

/// `μ(M)`: the most non-bases such that no flat covers two of them.
pub fn mu_integer(m: &Matroid) -> Result<(usize, Vec<Subset>), CoverError> {
    let system = CoverSystem::new(m)?;
    let (packing, _) = max_packing(&system.problem, None);
    Ok((packing.len(), packing.iter().map(|&i| system.non_bases[i]).collect()))
}

/// Turns the circuit-hyperplane `h` into a basis.
pub fn relax(m: &Matroid, h: Subset) -> Result<Matroid, CoverError> {
    if !h.is_subset_of(m.ground()) || !m.is_circuit_hyperplane(h) {
        return Err(CoverError::NotACircuitHyperplane(h));
    }
    Ok(m.with_extra_basis(h))
}

/// Maps a cover of `M` to a cover of `M*` via `F ↦ cl*(E \ F)`.
pub fn dualize_cover(m: &Matroid, z: &FlatCover) -> Result<FlatCover, CoverError> {
    require_cover(m, z)?;
    let dual = m.dual();
    let flats = z.flats.iter().map(|f| dual.flat_of(f.elements.complement(m.len()))).collect();
    Ok(FlatCover::new(flats).trimmed(&dual))
}

/// Maps a cover of `M` to a cover of `M \ e` via `F ↦ F \ e`. Element `e` is 0-based;
/// the result lives on the deletion's relabeled ground set.
pub fn project_cover(m: &Matroid, z: &FlatCover, e: usize) -> Result<FlatCover, CoverError> {
    if e >= m.len() {
        return Err(CoverError::NoSuchElement(e + 1));
    }
    require_cover(m, z)?;
    let deletion = m.delete(Subset::singleton(e));
    let kept = deletion.map.range();
    let flats = z
        .flats
        .iter()
        .map(|f| {
            let elements = f.elements.without(e).compress(kept);
            Flat { rank: deletion.matroid.rank_of(elements), elements }
        })
        .collect();
    Ok(FlatCover::new(flats).trimmed(&deletion.matroid))
}

/// Builds a cover of `M` from a cover of `M \ e` and a cover of `(M / e)*`.
/// Both inputs live on `E \ e` relabeled in increasing order; `e` is 0-based.
pub fn combine_cover(
    m: &Matroid,
    e: usize,
    deletion_cover: &FlatCover,
    contraction_dual_cover: &FlatCover,
) -> Result<FlatCover, CoverError> {
    if e >= m.len() {
        return Err(CoverError::NoSuchElement(e + 1));
    }
    if m.loops().contains(e) || m.coloops().contains(e) {
        return Err(CoverError::LoopOrColoop(e + 1));
    }
    let rest = m.ground().without(e);
    require_cover(&m.delete(Subset::singleton(e)).matroid, deletion_cover)?;
    require_cover(&m.contract(Subset::singleton(e)).matroid.dual(), contraction_dual_cover)?;

    let mut flats: Vec<Flat> = deletion_cover.flats.iter().map(|f| m.flat_of(f.elements.expand(rest))).collect();
    flats.extend(contraction_dual_cover.flats.iter().map(|f| {
        let co_flat = m.coclosure_of(f.elements.expand(rest));
        m.flat_of(co_flat.complement(m.len()))
    }));
    Ok(FlatCover::new(flats).trimmed(m))
}

fn require_rank(m: &Matroid, expected: usize) -> Result<(), CoverError> {
    if m.rank() != expected {
        return Err(CoverError::WrongRank { expected, found: m.rank() });
    }
    Ok(())
}

/// Rank-1 flats of `m`, one per parallel class.
fn points(m: &Matroid) -> Vec<Flat> {
    let loops = m.loops();
    let set: BTreeSet<Flat> =
        (0..m.len()).filter(|e| !loops.contains(*e)).map(|e| m.flat_of(Subset::singleton(e))).collect();
    set.into_iter().collect()
}

/// The closure of the empty set together with every point.
pub fn rank2_cover(m: &Matroid) -> Result<FlatCover, CoverError> {
    require_rank(m, 2)?;
    let mut flats = vec![m.flat_of(Subset::EMPTY)];
    flats.extend(points(m));
    Ok(FlatCover::new(flats).trimmed(m))
}

/// Rank-2 flats containing at least three points.
pub fn long_lines(m: &Matroid) -> Vec<Flat> {
    let pts = points(m);
    m.lines().into_iter().filter(|l| pts.iter().filter(|p| p.elements.is_subset_of(l.elements)).count() >= 3).collect()
}

/// The loops, the points with at least two non-loop elements, and every long line.
pub fn long_lines_cover(m: &Matroid) -> Result<FlatCover, CoverError> {
    require_rank(m, 3)?;
    let loops = m.loops();
    let mut flats = vec![m.flat_of(Subset::EMPTY)];
    flats.extend(points(m).into_iter().filter(|p| p.elements.difference(loops).len() >= 2));
    flats.extend(long_lines(m));
    Ok(FlatCover::new(flats).trimmed(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::isomorphism::is_isomorphic;

    fn flat(m: &Matroid, labels: &[usize]) -> Flat {
        m.flat_of(Subset::from_labels(labels.iter().copied()))
    }

    #[test]
    fn membership_checks() {
        let u36 = catalog("U(3,6)").unwrap();
        assert!(is_flat_cover(&u36, &FlatCover::default()).unwrap().holds());

        let p6 = catalog("P6").unwrap();
        let line = FlatCover::new(vec![flat(&p6, &[1, 2, 3])]);
        assert!(is_flat_cover(&p6, &line).unwrap().holds());

        let k4 = catalog("MK4").unwrap();
        let three = FlatCover::new(vec![flat(&k4, &[1, 2, 3]), flat(&k4, &[1, 4, 5]), flat(&k4, &[3, 4, 6])]);
        assert_eq!(is_flat_cover(&k4, &three).unwrap(), CoverCheck::Uncovered(Subset::from_labels([2, 5, 6])));

        let fake = FlatCover::new(vec![Flat { rank: 2, elements: Subset::from_labels([1, 2]) }]);
        assert!(matches!(is_flat_cover(&p6, &fake), Err(CoverError::NotAFlat(_))));
    }

    #[test]
    fn small_kappa_values() {
        for (name, value) in [("U(3,6)", 0), ("P6", 1), ("Q6", 2), ("W3", 3), ("MK4", 4), ("V8", 5), ("R6", 2)] {
            let m = catalog(name).unwrap();
            let result = kappa_exact(&m).unwrap();
            assert_eq!(result.value, value, "{name}");
            assert!(is_flat_cover(&m, &result.cover).unwrap().holds());
            assert_eq!(result.optimality_certificate.unwrap().weights.len(), value, "{name}");
        }
    }

    #[test]
    fn relaxation_chain() {
        let p6 = catalog("P6").unwrap();
        assert_eq!(relax(&p6, Subset::from_labels([1, 2, 3])).unwrap(), catalog("U(3,6)").unwrap());
        let q6 = catalog("Q6").unwrap();
        assert!(is_isomorphic(&relax(&q6, Subset::from_labels([1, 2, 3])).unwrap(), &p6).is_some());
        let k4 = catalog("MK4").unwrap();
        assert!(is_isomorphic(&relax(&k4, Subset::from_labels([1, 2, 3])).unwrap(), &catalog("W3").unwrap()).is_some());
        assert_eq!(
            relax(&k4, Subset::from_labels([1, 2, 4])),
            Err(CoverError::NotACircuitHyperplane(Subset::from_labels([1, 2, 4])))
        );
    }

    #[test]
    fn integer_dual() {
        assert_eq!(mu_integer(&catalog("U(2,5)").unwrap()).unwrap().0, 0);
        let (value, triangles) = mu_integer(&catalog("MK4").unwrap()).unwrap();
        assert_eq!(value, 4);
        assert_eq!(triangles, catalog("MK4").unwrap().non_bases());
    }

    #[test]
    fn transforms_produce_covers() {
        for name in ["P6", "MK4", "Q6", "V8"] {
            let m = catalog(name).unwrap();
            let z = kappa_exact(&m).unwrap().cover;
            let zd = dualize_cover(&m, &z).unwrap();
            assert!(zd.len() <= z.len());
            assert!(is_flat_cover(&m.dual(), &zd).unwrap().holds(), "{name}");
            for e in 0..m.len() {
                let zp = project_cover(&m, &z, e).unwrap();
                assert!(zp.len() <= z.len());
                assert!(is_flat_cover(&m.delete(Subset::singleton(e)).matroid, &zp).unwrap().holds());
            }
        }
    }

    #[test]
    fn combine_on_k4() {
        let k4 = catalog("MK4").unwrap();
        for e in 0..6 {
            let single = Subset::singleton(e);
            let del = kappa_exact(&k4.delete(single).matroid).unwrap();
            let con = kappa_exact(&k4.contract(single).matroid.dual()).unwrap();
            let z = combine_cover(&k4, e, &del.cover, &con.cover).unwrap();
            assert!(is_flat_cover(&k4, &z).unwrap().holds());
            assert!(z.len() <= del.value + con.value);
        }
        let u11 = Matroid::new(2, 1, [Subset::from_labels([1])]).unwrap();
        assert_eq!(
            combine_cover(&u11, 0, &FlatCover::default(), &FlatCover::default()),
            Err(CoverError::LoopOrColoop(1))
        );
    }

    #[test]
    fn structured_covers() {
        // Rank 2 with classes {1,2}, {3}, {4}.
        let m = Matroid::from_non_bases(4, 2, [Subset::from_labels([1, 2])]).unwrap();
        let z = rank2_cover(&m).unwrap();
        assert_eq!(z.flats, vec![flat(&m, &[1, 2])]);
        assert!(rank2_cover(&catalog("U(2,4)").unwrap()).unwrap().is_empty());

        let q6 = catalog("Q6").unwrap();
        let z = long_lines_cover(&q6).unwrap();
        assert_eq!(z.flats, vec![flat(&q6, &[1, 2, 3]), flat(&q6, &[1, 4, 5])]);
        let k4 = catalog("MK4").unwrap();
        assert_eq!(long_lines_cover(&k4).unwrap().len(), 4);
        assert!(long_lines_cover(&catalog("U(3,6)").unwrap()).unwrap().is_empty());
        assert_eq!(long_lines_cover(&m), Err(CoverError::WrongRank { expected: 3, found: 2 }));
    }
}
