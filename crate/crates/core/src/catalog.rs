//! Named matroids with fixed labelings.
//!
//! | name        | definition                                                        |
//! |-------------|-------------------------------------------------------------------|
//! | `U(r,n)`    | uniform, `0 <= r <= n <= 12`                                      |
//! | `P6`        | rank 3, non-basis `{1,2,3}`                                        |
//! | `Q6`        | rank 3, non-bases `{1,2,3}`, `{1,4,5}`                             |
//! | `R6`        | rank 3, non-bases `{1,2,3}`, `{4,5,6}`                             |
//! | `W3`        | rank 3, non-bases `{1,2,3}`, `{3,4,5}`, `{5,6,1}`                  |
//! | `MK4`       | rank 3, triangles `{1,2,3}`, `{1,4,5}`, `{3,4,6}`, `{2,5,6}`        |
//! | `MK(m)`     | spanning trees of `K_m`, `1 <= m <= 6`, edges in lex order of pairs |
//! | `V8`        | rank 4 on `a a' b b' c c' d d'` = `1..8`, five non-bases           |
//!
//! `MKm` without parentheses is accepted as `MK(m)` for every `m` except 4,
//! where `MK4` keeps the triangle labeling above. Both labelings of `M(K4)` are
//! isomorphic.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog matroid `{0}`")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogName {
    Uniform { rank: usize, n: usize },
    P6,
    Q6,
    R6,
    W3,
    MK4,
    CompleteGraph(usize),
    V8,
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Uniform { rank, n } => write!(f, "U({rank},{n})"),
            CatalogName::P6 => write!(f, "P6"),
            CatalogName::Q6 => write!(f, "Q6"),
            CatalogName::R6 => write!(f, "R6"),
            CatalogName::W3 => write!(f, "W3"),
            CatalogName::MK4 => write!(f, "MK4"),
            CatalogName::CompleteGraph(m) => write!(f, "MK({m})"),
            CatalogName::V8 => write!(f, "V8"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = CatalogError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownName(raw.to_string());
        let name: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let parsed = match name.as_str() {
            "P6" => CatalogName::P6,
            "Q6" => CatalogName::Q6,
            "R6" => CatalogName::R6,
            "W3" => CatalogName::W3,
            "MK4" => CatalogName::MK4,
            "V8" => CatalogName::V8,
            _ => {
                if let Some(args) = name.strip_prefix("U(").and_then(|s| s.strip_suffix(')')) {
                    let (r, n) = args.split_once(',').ok_or_else(unknown)?;
                    let rank = r.parse().map_err(|_| unknown())?;
                    let n = n.parse().map_err(|_| unknown())?;
                    if rank > n || n > 12 {
                        return Err(unknown());
                    }
                    CatalogName::Uniform { rank, n }
                } else if let Some(rest) = name.strip_prefix("MK") {
                    let m: usize = rest
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .unwrap_or(rest)
                        .parse()
                        .map_err(|_| unknown())?;
                    if !(1..=6).contains(&m) {
                        return Err(unknown());
                    }
                    CatalogName::CompleteGraph(m)
                } else {
                    return Err(unknown());
                }
            }
        };
        Ok(parsed)
    }
}

impl CatalogName {
    pub fn build(self) -> Matroid {
        let sparse = |n: usize, r: usize, sets: &[&[usize]]| {
            let non_bases = sets.iter().map(|s| Subset::from_labels(s.iter().copied()));
            Matroid::from_non_bases(n, r, non_bases).expect("catalog definitions are valid")
        };
        match self {
            CatalogName::Uniform { rank, n } => uniform(rank, n),
            CatalogName::P6 => sparse(6, 3, &[&[1, 2, 3]]),
            CatalogName::Q6 => sparse(6, 3, &[&[1, 2, 3], &[1, 4, 5]]),
            CatalogName::R6 => sparse(6, 3, &[&[1, 2, 3], &[4, 5, 6]]),
            CatalogName::W3 => sparse(6, 3, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]),
            CatalogName::MK4 => sparse(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[3, 4, 6], &[2, 5, 6]]),
            CatalogName::V8 => {
                sparse(8, 4, &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 2, 7, 8], &[3, 4, 5, 6], &[3, 4, 7, 8]])
            }
            CatalogName::CompleteGraph(m) => complete_graph(m),
        }
    }

    /// The named matroids plus a spread of small uniform ones, used as the default test set.
    pub fn standard_set() -> Vec<CatalogName> {
        let mut names =
            vec![CatalogName::P6, CatalogName::Q6, CatalogName::R6, CatalogName::W3, CatalogName::MK4, CatalogName::V8];
        names.extend((2..=6).map(CatalogName::CompleteGraph));
        for (rank, n) in [(0, 3), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6), (4, 7), (6, 12)] {
            names.push(CatalogName::Uniform { rank, n });
        }
        names
    }
}

/// Looks up a named matroid, e.g. `"V8"`, `"U(3,6)"` or `"MK(5)"`.
pub fn catalog(name: &str) -> Result<Matroid, CatalogError> {
    Ok(name.parse::<CatalogName>()?.build())
}

/// `U(rank, n)` for any supported `n`, outside the catalog's size limit.
pub fn uniform(rank: usize, n: usize) -> Matroid {
    assert!(rank <= n, "U({rank},{n}) does not exist");
    Matroid::from_trusted(n, rank, k_subsets(n, rank).collect())
}

/// Vertex pairs of `K_m` in lex order; edge `k` (0-based) joins `pairs[k]`.
pub fn complete_graph_edges(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect()
}

/// Cycle matroid of `K_m`: bases are spanning trees.
pub fn complete_graph(m: usize) -> Matroid {
    let edges = complete_graph_edges(m);
    let rank = m.saturating_sub(1);
    let bases = k_subsets(edges.len(), rank).filter(|s| is_spanning_tree(m, &edges, *s)).collect();
    Matroid::from_trusted(edges.len(), rank, bases)
}

fn is_spanning_tree(m: usize, edges: &[(usize, usize)], s: Subset) -> bool {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in s.iter() {
        let (u, v) = edges[e];
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matroids_have_expected_shape() {
        let v8 = catalog("V8").unwrap();
        assert_eq!((v8.len(), v8.rank(), v8.non_bases().len()), (8, 4, 5));

        let k4 = catalog("MK4").unwrap();
        assert_eq!((k4.len(), k4.rank()), (6, 3));
        assert_eq!(k4.non_bases().len(), 4);
        assert_eq!(k4.circuit_hyperplanes().len(), 4);

        let u36 = catalog("U(3,6)").unwrap();
        assert_eq!(u36.bases().len(), 20);
    }

    #[test]
    fn complete_graphs_count_spanning_trees() {
        // Cayley: m^(m-2).
        for (m, trees) in [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            assert_eq!(complete_graph(m).bases().len(), trees, "K_{m}");
        }
        let k1 = catalog("MK(1)").unwrap();
        assert_eq!((k1.len(), k1.rank()), (0, 0));
    }

    #[test]
    fn catalog_matroids_pass_the_axiom_checker() {
        for name in CatalogName::standard_set() {
            let m = name.build();
            let rebuilt = Matroid::new(m.len(), m.rank(), m.bases().iter().copied());
            assert_eq!(rebuilt.as_ref(), Ok(&m), "{name}");
        }
    }

    #[test]
    fn name_parsing() {
        assert_eq!("MK5".parse::<CatalogName>().unwrap(), CatalogName::CompleteGraph(5));
        assert_eq!("MK(4)".parse::<CatalogName>().unwrap(), CatalogName::CompleteGraph(4));
        assert_eq!("MK4".parse::<CatalogName>().unwrap(), CatalogName::MK4);
        assert_eq!("U(3, 6)".parse::<CatalogName>().unwrap(), CatalogName::Uniform { rank: 3, n: 6 });
        assert!(matches!(catalog("U(4,3)"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog("U(1,13)"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog("Fano"), Err(CatalogError::UnknownName(_))));
        for name in CatalogName::standard_set() {
            assert_eq!(name.to_string().parse::<CatalogName>().unwrap(), name);
        }
    }
}
