//! Exact minimum set cover and maximum packing over small instances.
//!
//! A [`CoverProblem`] is a universe `{0, .., u-1}` and a list of sets. Cover
//! search is branch and bound: branch on the uncovered element with the fewest
//! remaining sets, try those sets in decreasing order of new coverage, and
//! forbid each tried set in later siblings. The bound at every node is a
//! greedy packing of uncovered elements no two of which share an available set.
//!
//! Packing asks for the largest set of elements no two of which lie in a common
//! set; it is solved exactly as a maximum clique in the compatibility graph.

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone)]
pub struct CoverProblem {
    universe: usize,
    sets: Vec<FixedBitSet>,
    /// For each element, the sets containing it.
    containing: Vec<Vec<usize>>,
}

impl CoverProblem {
    pub fn new(universe: usize, sets: Vec<FixedBitSet>) -> Self {
        let mut containing = vec![Vec::new(); universe];
        for (i, s) in sets.iter().enumerate() {
            assert_eq!(s.len(), universe, "set {i} has the wrong universe");
            for e in s.ones() {
                containing[e].push(i);
            }
        }
        CoverProblem { universe, sets, containing }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn containing(&self, element: usize) -> &[usize] {
        &self.containing[element]
    }

    pub fn is_coverable(&self) -> bool {
        self.containing.iter().all(|c| !c.is_empty())
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = FixedBitSet::with_capacity(self.universe);
        for &s in chosen {
            covered.union_with(&self.sets[s]);
        }
        covered.count_ones(..) == self.universe
    }

    /// Whether no set contains two of `elements`.
    pub fn is_packing(&self, elements: &[usize]) -> bool {
        let mut used = vec![false; self.sets.len()];
        for &e in elements {
            for &s in &self.containing[e] {
                if std::mem::replace(&mut used[s], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Sets not contained in another set. Among equal sets the first is kept.
    pub fn undominated_sets(&self) -> Vec<usize> {
        let n = self.sets.len();
        (0..n)
            .filter(|&i| {
                !(0..n)
                    .any(|j| j != i && self.sets[i].is_subset(&self.sets[j]) && (self.sets[i] != self.sets[j] || j < i))
            })
            .collect()
    }

    /// Elements whose containing sets (restricted to `sets`) do not strictly
    /// include another element's. Among equal profiles the first is kept.
    pub fn undominated_elements(&self, sets: &[usize]) -> Vec<usize> {
        let profiles: Vec<FixedBitSet> = (0..self.universe)
            .map(|e| {
                let mut p = FixedBitSet::with_capacity(sets.len());
                for (k, &s) in sets.iter().enumerate() {
                    if self.sets[s].contains(e) {
                        p.insert(k);
                    }
                }
                p
            })
            .collect();
        (0..self.universe)
            .filter(|&e| {
                !(0..self.universe)
                    .any(|f| f != e && profiles[f].is_subset(&profiles[e]) && (profiles[f] != profiles[e] || f < e))
            })
            .collect()
    }

    /// Restricts to the given sets and elements, renumbering both.
    pub fn restrict(&self, sets: &[usize], elements: &[usize]) -> CoverProblem {
        let restricted = sets
            .iter()
            .map(|&s| {
                let mut b = FixedBitSet::with_capacity(elements.len());
                for (k, &e) in elements.iter().enumerate() {
                    if self.sets[s].contains(e) {
                        b.insert(k);
                    }
                }
                b
            })
            .collect();
        CoverProblem::new(elements.len(), restricted)
    }
}

/// Repeatedly takes the set covering the most uncovered elements (lowest index on ties).
pub fn greedy_cover(p: &CoverProblem) -> Option<Vec<usize>> {
    if !p.is_coverable() {
        return None;
    }
    let mut uncovered = FixedBitSet::with_capacity(p.universe);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while uncovered.count_ones(..) > 0 {
        let (best, _) = p
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection(&uncovered).count()))
            .max_by_key(|&(i, c)| (c, std::cmp::Reverse(i)))?;
        uncovered.difference_with(&p.sets[best]);
        chosen.push(best);
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Greedy packing: elements with the fewest sets first.
pub fn greedy_packing(p: &CoverProblem) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.universe).collect();
    order.sort_by_key(|&e| (p.containing[e].len(), e));
    let mut blocked = FixedBitSet::with_capacity(p.universe);
    let mut chosen = Vec::new();
    for e in order {
        if blocked.contains(e) {
            continue;
        }
        chosen.push(e);
        for &s in &p.containing[e] {
            blocked.union_with(&p.sets[s]);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Statistics from an exact search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// A minimum-cardinality cover, or `None` if some element lies in no set.
pub fn min_cover(p: &CoverProblem) -> Option<(Vec<usize>, SearchStats)> {
    if !p.is_coverable() {
        return None;
    }
    let kept = p.undominated_sets();
    let reduced = p.restrict(&kept, &(0..p.universe).collect::<Vec<_>>());
    let incumbent = greedy_cover(&reduced).expect("reduction keeps coverability");
    let mut search = CoverSearch { p: &reduced, best: incumbent, stats: SearchStats::default() };

    let mut uncovered = FixedBitSet::with_capacity(reduced.universe);
    uncovered.insert_range(..);
    let forbidden = FixedBitSet::with_capacity(reduced.sets.len());
    search.recurse(&uncovered, &forbidden, &mut Vec::new());

    let mut result: Vec<usize> = search.best.iter().map(|&s| kept[s]).collect();
    result.sort_unstable();
    Some((result, search.stats))
}

struct CoverSearch<'a> {
    p: &'a CoverProblem,
    best: Vec<usize>,
    stats: SearchStats,
}

impl CoverSearch<'_> {
    fn available<'s>(&'s self, e: usize, forbidden: &'s FixedBitSet) -> impl Iterator<Item = usize> + 's {
        self.p.containing[e].iter().copied().filter(move |s| !forbidden.contains(*s))
    }

    /// Elements no two of which share an available set.
    fn packing_bound(&self, uncovered: &FixedBitSet, forbidden: &FixedBitSet) -> usize {
        let mut order: Vec<(usize, usize)> =
            uncovered.ones().map(|e| (self.available(e, forbidden).count(), e)).collect();
        order.sort_unstable();
        let mut blocked = FixedBitSet::with_capacity(self.p.universe);
        let mut count = 0;
        for (_, e) in order {
            if blocked.contains(e) {
                continue;
            }
            count += 1;
            for s in self.available(e, forbidden) {
                blocked.union_with(&self.p.sets[s]);
            }
        }
        count
    }

    fn recurse(&mut self, uncovered: &FixedBitSet, forbidden: &FixedBitSet, chosen: &mut Vec<usize>) {
        self.stats.nodes += 1;
        if uncovered.count_ones(..) == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= self.best.len() {
            return;
        }
        let mut branch_on = None;
        let mut fewest = usize::MAX;
        for e in uncovered.ones() {
            let c = self.available(e, forbidden).count();
            if c == 0 {
                return;
            }
            if c < fewest {
                fewest = c;
                branch_on = Some(e);
            }
        }
        if chosen.len() + self.packing_bound(uncovered, forbidden) >= self.best.len() {
            return;
        }
        let e = branch_on.expect("uncovered is nonempty");
        let mut candidates: Vec<(usize, usize)> =
            self.available(e, forbidden).map(|s| (self.p.sets[s].intersection(uncovered).count(), s)).collect();
        candidates.sort_by_key(|&(gain, s)| (std::cmp::Reverse(gain), s));

        let mut local_forbidden = forbidden.clone();
        for (_, s) in candidates {
            let mut next = uncovered.clone();
            next.difference_with(&self.p.sets[s]);
            chosen.push(s);
            self.recurse(&next, &local_forbidden, chosen);
            chosen.pop();
            local_forbidden.insert(s);
            if chosen.len() + 1 >= self.best.len() {
                return;
            }
        }
    }
}

/// A maximum packing. With `target`, stops as soon as a packing of that size is found.
pub fn max_packing(p: &CoverProblem, target: Option<usize>) -> (Vec<usize>, SearchStats) {
    let all_sets: Vec<usize> = (0..p.sets.len()).collect();
    let kept = p.undominated_elements(&all_sets);
    let reduced = p.restrict(&all_sets, &kept);
    let n = reduced.universe;

    // Compatible = no common set.
    let mut compatible = vec![FixedBitSet::with_capacity(n); n];
    for (x, row) in compatible.iter_mut().enumerate() {
        let mut conflict = FixedBitSet::with_capacity(n);
        for &s in &reduced.containing[x] {
            conflict.union_with(&reduced.sets[s]);
        }
        conflict.insert(x);
        row.insert_range(..);
        row.difference_with(&conflict);
    }

    let initial = greedy_packing(&reduced);
    let mut clique = CliqueSearch {
        adj: &compatible,
        best: initial.clone(),
        target: target.unwrap_or(usize::MAX),
        stats: SearchStats::default(),
    };
    if clique.best.len() < clique.target {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(compatible[v].count_ones(..)), v));
        clique.expand(&mut Vec::new(), order);
    }
    let mut chosen: Vec<usize> = clique.best.iter().map(|&e| kept[e]).collect();
    chosen.sort_unstable();
    (chosen, clique.stats)
}

struct CliqueSearch<'a> {
    adj: &'a [FixedBitSet],
    best: Vec<usize>,
    target: usize,
    stats: SearchStats,
}

impl CliqueSearch<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    /// Greedy coloring; returns vertices sorted by color with their color numbers.
    fn color_sort(&self, p: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in p {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !self.adj[v].contains(u))) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                order.push(v);
                colors.push(k + 1);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, current: &mut Vec<usize>, p: Vec<usize>) {
        self.stats.nodes += 1;
        let (order, colors) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if self.done() || current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            current.push(v);
            let next: Vec<usize> = order[..i].iter().copied().filter(|&u| self.adj[v].contains(u)).collect();
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(universe: usize, sets: &[&[usize]]) -> CoverProblem {
        let sets = sets
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(universe);
                for &e in *s {
                    b.insert(e);
                }
                b
            })
            .collect();
        CoverProblem::new(universe, sets)
    }

    /// Smallest cover by trying every subfamily.
    fn brute_force_cover(p: &CoverProblem) -> usize {
        let m = p.sets().len();
        (0u32..1 << m)
            .filter(|mask| {
                let chosen: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
                p.is_cover(&chosen)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    fn brute_force_packing(p: &CoverProblem) -> usize {
        let u = p.universe();
        (0u32..1 << u)
            .filter(|mask| {
                let chosen: Vec<usize> = (0..u).filter(|i| mask & (1 << i) != 0).collect();
                p.is_packing(&chosen)
            })
            .map(u32::count_ones)
            .max()
            .unwrap() as usize
    }

    #[test]
    fn greedy_is_not_optimal_but_search_is() {
        // Classic instance where greedy takes the big middle set first.
        let p = problem(6, &[&[0, 1, 2], &[3, 4, 5], &[1, 2, 3, 4], &[0], &[5]]);
        assert_eq!(greedy_cover(&p).unwrap().len(), 3);
        let (cover, _) = min_cover(&p).unwrap();
        assert_eq!(cover, vec![0, 1]);
    }

    #[test]
    fn uncoverable_instance() {
        let p = problem(3, &[&[0, 1]]);
        assert!(min_cover(&p).is_none());
    }

    #[test]
    fn packing_of_disjoint_sets() {
        let p = problem(4, &[&[0, 1], &[2, 3]]);
        let (pack, _) = max_packing(&p, None);
        assert_eq!(pack.len(), 2);
        assert!(p.is_packing(&pack));
    }

    #[test]
    fn random_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let universe = rng.gen_range(1..=10);
            let m = rng.gen_range(1..=9);
            let mut sets: Vec<FixedBitSet> = (0..m)
                .map(|_| {
                    let mut b = FixedBitSet::with_capacity(universe);
                    for e in 0..universe {
                        if rng.gen_bool(0.35) {
                            b.insert(e);
                        }
                    }
                    b
                })
                .collect();
            // Make it coverable.
            for e in 0..universe {
                if !sets.iter().any(|s| s.contains(e)) {
                    let i = rng.gen_range(0..m);
                    sets[i].insert(e);
                }
            }
            let p = CoverProblem::new(universe, sets);
            let (cover, _) = min_cover(&p).unwrap();
            assert!(p.is_cover(&cover));
            assert_eq!(cover.len(), brute_force_cover(&p));
            let (pack, _) = max_packing(&p, None);
            assert!(p.is_packing(&pack));
            assert_eq!(pack.len(), brute_force_packing(&p));
            assert!(pack.len() <= cover.len());
        }
    }
}
