//! Minor containment with witness extraction.
//!
//! `N` is a minor of `M` iff `N ≅ M / A \ B` for some independent `A` with
//! `|A| = r(M) - r(N)` and `B` coindependent in `M / A`. The search walks the
//! independent `A` in colex order, then `B` in colex order, and returns the first
//! hit, so results are deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::uniform;
use crate::isomorphism::is_isomorphic;
use crate::matroid::{Flat, GroundMap, Matroid};
use crate::subset::{k_subsets_of, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("line deletion needs a simple rank-3 matroid")]
    NotSimpleRank3,
    #[error("line deletion needs k >= 4, got {0}")]
    BadK(usize),
}

/// `host / contract \ delete ≅ pattern`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contract: Subset,
    pub delete: Subset,
    /// From the minor's relabeled ground set (host order) onto the pattern's.
    pub map: GroundMap,
}

impl MinorWitness {
    /// Recomputes the minor and checks the map.
    pub fn verify(&self, host: &Matroid, pattern: &Matroid) -> bool {
        if !self.contract.is_disjoint(self.delete) || !host.is_independent(self.contract) {
            return false;
        }
        let Ok(minor) = host.minor(self.contract, self.delete) else {
            return false;
        };
        minor.matroid.len() == pattern.len()
            && self.map.source_len() == pattern.len()
            && &minor.matroid.relabel(&self.map) == pattern
    }
}

/// Cheap isomorphism invariants compared before running the full search.
#[derive(Debug, PartialEq, Eq)]
struct Profile {
    rank: usize,
    bases: usize,
    loops: usize,
    coloops: usize,
    parallel_classes: Vec<usize>,
}

fn profile(m: &Matroid) -> Profile {
    let loops = m.loops();
    let mut parallel_classes = Vec::new();
    let mut seen = loops;
    for e in 0..m.len() {
        if !seen.contains(e) {
            let class = m.closure_of(Subset::singleton(e)).difference(loops);
            seen = seen.union(class);
            parallel_classes.push(class.len());
        }
    }
    parallel_classes.sort_unstable();
    Profile { rank: m.rank(), bases: m.bases().len(), loops: loops.len(), coloops: m.coloops().len(), parallel_classes }
}

pub fn has_minor(host: &Matroid, pattern: &Matroid) -> Option<MinorWitness> {
    let (n, r) = (host.len(), host.rank());
    let (pn, pr) = (pattern.len(), pattern.rank());
    if pr > r || pn > n || pn - pr > n - r {
        return None;
    }
    let contract_size = r - pr;
    let delete_size = n - contract_size - pn;
    let target = profile(pattern);

    for a in host.independent_sets(contract_size) {
        let contracted = host.contract(a);
        let rest = host.ground().difference(a);
        for b in k_subsets_of(rest, delete_size) {
            let minor = contracted.matroid.delete(b.compress(rest));
            if minor.matroid.rank() != pr || profile(&minor.matroid) != target {
                continue;
            }
            if let Some(map) = is_isomorphic(&minor.matroid, pattern) {
                return Some(MinorWitness { contract: a, delete: b, map });
            }
        }
    }
    None
}

/// A line `ℓ` of a simple rank-3 matroid with no `U(3,k-1)`-minor in `M \ ℓ`.
pub fn line_deletion_witness(m: &Matroid, k: usize) -> Result<Option<Flat>, MinorError> {
    if m.rank() != 3 || !m.is_simple() {
        return Err(MinorError::NotSimpleRank3);
    }
    if k < 4 {
        return Err(MinorError::BadK(k));
    }
    let pattern = uniform(3, k - 1);
    Ok(m.lines().into_iter().find(|line| has_minor(&m.delete(line.elements).matroid, &pattern).is_none()))
}
