//! Fractional cover complexity by exact rational linear programming.
//!
//! The packing program `max Σ y_X` subject to `Σ_{X covered by F} y_X <= 1` for
//! every flat `F` is solved with a dense-tableau simplex using Bland's rule. The
//! origin is feasible, so there is no phase one. The covering solution `z_F` is
//! read off the reduced costs of the slack columns, and both solutions are
//! checked against the full, unreduced instance before they are returned.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::brackets;
use crate::cover::{CoverError, CoverSystem, FlatCover};
use crate::matroid::{Flat, Matroid, MatroidError};
use crate::subset::{big_binomial, k_subsets, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("the fractional cover leaves non-basis {0} below one")]
    InfeasibleInput(Subset),
    #[error("the fractional cover has value zero")]
    ZeroValue,
    #[error("blow-up needs 0 <= t < r(M) = {rank}, got t = {t}")]
    BadT { t: usize, rank: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// `{"numerator": "..", "denominator": ".."}`.
#[derive(Serialize)]
struct RationalJson {
    numerator: String,
    denominator: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson { numerator: q.numer().to_string(), denominator: q.denom().to_string() }
    }
}

pub fn serialize_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(q).serialize(s)
}

/// Nonnegative weights on flats, zero weights omitted, sorted by flat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FractionalCover {
    pub weights: Vec<(Flat, BigRational)>,
}

impl FractionalCover {
    pub fn value(&self) -> BigRational {
        self.weights.iter().map(|(_, w)| w).sum()
    }

    /// Sums duplicates, drops zeros and sorts.
    pub fn normalized(weights: impl IntoIterator<Item = (Flat, BigRational)>) -> Self {
        let mut merged: BTreeMap<Flat, BigRational> = BTreeMap::new();
        for (f, w) in weights {
            *merged.entry(f).or_insert_with(BigRational::zero) += w;
        }
        FractionalCover { weights: merged.into_iter().filter(|(_, w)| !w.is_zero()).collect() }
    }

    /// Total weight on flats covering `x`.
    pub fn coverage(&self, x: Subset) -> BigRational {
        self.weights.iter().filter(|(f, _)| f.covers(x)).map(|(_, w)| w).sum()
    }

    /// The first non-basis covered with total weight below one, if any.
    pub fn deficient(&self, m: &Matroid) -> Option<Subset> {
        let one = BigRational::one();
        m.non_bases().into_iter().find(|x| self.coverage(*x) < one)
    }

    pub fn is_feasible(&self, m: &Matroid) -> bool {
        self.weights.iter().all(|(f, w)| !w.is_negative() && m.is_flat(f.elements)) && self.deficient(m).is_none()
    }
}

impl Serialize for FractionalCover {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            elements: Subset,
            rank: usize,
            weight: RationalJson,
        }
        let mut seq = s.serialize_seq(Some(self.weights.len()))?;
        for (f, w) in &self.weights {
            seq.serialize_element(&Entry { elements: f.elements, rank: f.rank, weight: w.into() })?;
        }
        seq.end()
    }
}

/// Nonnegative weights on non-bases, zero weights omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualCertificate {
    pub weights: Vec<(Subset, BigRational)>,
}

impl DualCertificate {
    pub fn value(&self) -> BigRational {
        self.weights.iter().map(|(_, w)| w).sum()
    }

    /// Whether every flat carries total weight at most one.
    pub fn is_feasible(&self, m: &Matroid) -> Result<bool, MatroidError> {
        let one = BigRational::one();
        let non_bases = m.non_bases();
        if self.weights.iter().any(|(x, w)| w.is_negative() || non_bases.binary_search(x).is_err()) {
            return Ok(false);
        }
        Ok(m.all_flats()?.iter().all(|f| {
            let load: BigRational = self.weights.iter().filter(|(x, _)| f.covers(*x)).map(|(_, w)| w).sum();
            load <= one
        }))
    }
}

impl Serialize for DualCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            non_basis: Subset,
            weight: RationalJson,
        }
        let mut seq = s.serialize_seq(Some(self.weights.len()))?;
        for (x, w) in &self.weights {
            seq.serialize_element(&Entry { non_basis: *x, weight: w.into() })?;
        }
        seq.end()
    }
}

/// Optimal value with primal and dual solutions of equal value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaStar {
    #[serde(serialize_with = "serialize_rational")]
    pub value: BigRational,
    pub cover: FractionalCover,
    pub certificate: DualCertificate,
}

/// Solution of `max c·x` subject to `A x <= b`, `x >= 0`, with `b >= 0`.
#[derive(Debug, Clone)]
pub struct SimplexSolution {
    pub value: BigRational,
    pub x: Vec<BigRational>,
    /// Optimal multipliers of the constraint rows.
    pub duals: Vec<BigRational>,
    pub pivots: usize,
}

/// Dense exact simplex with Bland's rule. Panics if the program is unbounded.
pub fn simplex_max(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> SimplexSolution {
    let rows = a.len();
    let vars = c.len();
    let width = vars + rows;
    assert!(b.iter().all(|v| !v.is_negative()), "the origin must be feasible");

    let mut tableau: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut full = row.clone();
            full.resize(width, BigRational::zero());
            full[vars + i] = BigRational::one();
            full
        })
        .collect();
    let mut rhs = b.to_vec();
    let mut basis: Vec<usize> = (vars..width).collect();
    let mut reduced: Vec<BigRational> = c.to_vec();
    reduced.resize(width, BigRational::zero());
    let mut value = BigRational::zero();
    let mut pivots = 0;

    while let Some(enter) = reduced.iter().position(|v| v.is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            let coef = &tableau[i][enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &rhs[i] / coef;
            let better = match &leave {
                None => true,
                Some((j, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*j]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (row, _) = leave.expect("packing programs are bounded");
        pivots += 1;

        let pivot = tableau[row][enter].clone();
        let pivot_row: Vec<BigRational> = tableau[row].iter().map(|v| v / &pivot).collect();
        let pivot_rhs = &rhs[row] / &pivot;
        let support: Vec<usize> = (0..width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..rows {
            if i == row || tableau[i][enter].is_zero() {
                continue;
            }
            let factor = tableau[i][enter].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                tableau[i][j] -= delta;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = reduced[enter].clone();
        for &j in &support {
            let delta = &factor * &pivot_row[j];
            reduced[j] -= delta;
        }
        value += &factor * &pivot_rhs;
        tableau[row] = pivot_row;
        rhs[row] = pivot_rhs;
        basis[row] = enter;
    }

    let mut x = vec![BigRational::zero(); vars];
    for (i, &v) in basis.iter().enumerate() {
        if v < vars {
            x[v] = rhs[i].clone();
        }
    }
    let duals = (0..rows).map(|i| -&reduced[vars + i]).collect();
    SimplexSolution { value, x, duals, pivots }
}

/// `κ*(M) = μ*(M)` with optimal solutions of both programs.
pub fn kappa_star(m: &Matroid) -> Result<KappaStar, LpError> {
    let system = CoverSystem::new(m)?;
    let p = &system.problem;
    // Flats whose covered sets lie inside another's give redundant rows; non-bases
    // covered by a superset of another's flats can carry zero weight.
    let flats = p.undominated_sets();
    let non_bases = p.undominated_elements(&flats);

    let a: Vec<Vec<BigRational>> = flats
        .iter()
        .map(|&f| {
            non_bases
                .iter()
                .map(|&x| if p.sets()[f].contains(x) { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let b = vec![BigRational::one(); flats.len()];
    let c = vec![BigRational::one(); non_bases.len()];
    let solution = simplex_max(&a, &b, &c);

    let cover = FractionalCover::normalized(flats.iter().zip(solution.duals).map(|(&f, w)| (system.flats[f], w)));
    let certificate = DualCertificate {
        weights: non_bases
            .iter()
            .zip(solution.x)
            .filter(|(_, w)| !w.is_zero())
            .map(|(&x, w)| (system.non_bases[x], w))
            .collect(),
    };

    let result = KappaStar { value: solution.value, cover, certificate };
    assert!(result.cover.value() == result.value && result.certificate.value() == result.value);
    assert!(result.cover.is_feasible(m), "primal solution failed verification");
    assert!(result.certificate.is_feasible(m)?, "dual solution failed verification");
    Ok(result)
}

/// `ln` of a positive rational, rounded up.
fn ln_upper(x: &BigRational) -> BigRational {
    brackets::ln(x).hi
}

fn total_bases(m: &Matroid) -> BigRational {
    BigRational::from_integer(BigInt::from(big_binomial(m.len() as u64, m.rank() as u64)))
}

/// `⌈κ* ln(C(n,r)/κ*)⌉` with the logarithm rounded up, floored at zero.
pub fn rounding_sample_size(m: &Matroid, value: &BigRational) -> u64 {
    let draws = value * ln_upper(&(total_bases(m) / value));
    if draws.is_positive() {
        draws.ceil().to_integer().to_u64().expect("sample size fits in u64")
    } else {
        0
    }
}

/// `κ*(ln(C(n,r)/κ*) + 1)` with the logarithm rounded up.
pub fn rounding_bound(m: &Matroid, value: &BigRational) -> BigRational {
    value * (ln_upper(&(total_bases(m) / value)) + BigRational::one())
}

/// Draws flats i.i.d. with probability `z_F / κ*`, then adds `cl(X)` for every
/// non-basis `X` still uncovered.
///
/// Each draw takes one `u64` from ChaCha8 seeded with `seed` and selects the
/// first flat (in `(rank, elements)` order) whose cumulative weight exceeds
/// `u / 2^64` times the total, compared exactly.
pub fn randomized_round(m: &Matroid, z: &FractionalCover, seed: u64) -> Result<FlatCover, LpError> {
    if let Some(x) = z.deficient(m) {
        return Err(LpError::InfeasibleInput(x));
    }
    let total = z.value();
    if total.is_zero() {
        return Err(LpError::ZeroValue);
    }
    let draws = rounding_sample_size(m, &total);
    let scale: BigInt = BigInt::one() << 64;
    let mut cumulative = Vec::with_capacity(z.weights.len());
    let mut running = BigRational::zero();
    for (_, w) in &z.weights {
        running += w;
        cumulative.push(&running * BigRational::from_integer(scale.clone()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flats = Vec::new();
    for _ in 0..draws {
        let u = BigRational::from_integer(BigInt::from(rng.next_u64())) * &total;
        let k = cumulative.iter().position(|c| &u < c).expect("u / 2^64 < 1");
        flats.push(z.weights[k].0);
    }
    let patches: Vec<Flat> =
        m.non_bases().into_iter().filter(|x| !flats.iter().any(|f| f.covers(*x))).map(|x| m.flat_of(x)).collect();
    flats.extend(patches);
    flats.sort_unstable();
    flats.dedup();
    Ok(FlatCover::new(flats))
}

/// Output of [`blow_up`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    pub cover: FractionalCover,
    /// Largest cost of a local cover `z^S`.
    #[serde(serialize_with = "serialize_rational")]
    pub max_local_cost: BigRational,
    /// `C(n,r) / C(n-t,r-t)` times `max_local_cost`.
    #[serde(serialize_with = "serialize_rational")]
    pub cost_bound: BigRational,
}

/// Averages local covers over all `t`-sets `S`: unit weight on `cl(S)` when `S`
/// is dependent, otherwise the sub-solver's cover of `M / S` lifted by adding `S`.
pub fn blow_up<F>(m: &Matroid, t: usize, sub_solver: F) -> Result<BlowUp, LpError>
where
    F: Fn(&Matroid) -> Result<FractionalCover, LpError>,
{
    let (n, r) = (m.len(), m.rank());
    if t >= r {
        return Err(LpError::BadT { t, rank: r });
    }
    let mut weights = Vec::new();
    let mut max_local_cost = BigRational::zero();
    for s in k_subsets(n, t) {
        if !m.is_independent(s) {
            weights.push((m.flat_of(s), BigRational::one()));
            max_local_cost = max_local_cost.max(BigRational::one());
            continue;
        }
        let contraction = m.contract(s);
        let rest = contraction.map.range();
        let local = sub_solver(&contraction.matroid)?;
        max_local_cost = max_local_cost.max(local.value());
        weights.extend(local.weights.into_iter().map(|(f, w)| {
            let elements = f.elements.expand(rest).union(s);
            (Flat { rank: f.rank + t, elements }, w)
        }));
    }
    let share = BigRational::new(BigInt::one(), BigInt::from(big_binomial(r as u64, t as u64)));
    let cover = FractionalCover::normalized(weights.into_iter().map(|(f, w)| (f, w * &share)));
    let factor = BigRational::new(
        BigInt::from(big_binomial(n as u64, r as u64)),
        BigInt::from(big_binomial((n - t) as u64, (r - t) as u64)),
    );
    let cost_bound = &factor * &max_local_cost;
    Ok(BlowUp { cover, max_local_cost, cost_bound })
}

/// The exact `κ*` solver in the shape [`blow_up`] expects.
pub fn exact_sub_solver(m: &Matroid) -> Result<FractionalCover, LpError> {
    Ok(kappa_star(m)?.cover)
}

/// `C(n,r)`, exposed for bound arithmetic.
pub fn basis_slots(m: &Matroid) -> BigUint {
    big_binomial(m.len() as u64, m.rank() as u64)
}
