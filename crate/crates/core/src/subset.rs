//! Bit-packed subsets of a small ground set.
//!
//! Element `i` (1-based in all I/O) lives in bit `i - 1`. The integer order on
//! the packed bits is colex order, which is the canonical subset order used
//! throughout the crate.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 30;

/// A subset of `{0, .., MAX_GROUND - 1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    /// Builds a subset from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset(0), |s, i| s.with(i))
    }

    /// Builds a subset from 1-based element labels.
    ///
    /// Panics on label 0; use it for literals, not for untrusted input.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        labels.into_iter().fold(Subset(0), |s, l| {
            assert!((1..=MAX_GROUND).contains(&l), "element label {l} out of range");
            s.with(l - 1)
        })
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[must_use]
    pub fn symmetric_difference(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `{0, .., n-1}`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    /// Largest element index plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// 0-based indices in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Packs the members of `self` that lie in `ground` into the low bits,
    /// preserving order. Used when relabeling onto a minor's ground set.
    #[must_use]
    pub fn compress(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (k, i) in ground.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: bit `k` maps to the `k`-th member of `ground`.
    #[must_use]
    pub fn expand(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (k, i) in ground.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// Sum of the 1-based labels.
    pub fn label_sum(self) -> usize {
        self.iter().map(|i| i + 1).sum()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as a list of 1-based labels.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        let mut s = Subset::EMPTY;
        for l in labels {
            if l == 0 || l > MAX_GROUND {
                return Err(serde::de::Error::custom(format!("element label {l} out of range")));
            }
            s = s.with(l - 1);
        }
        Ok(s)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// All `k`-subsets of `{0, .., n-1}` in colex order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= MAX_GROUND);
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    KSubsets { n, next }
}

pub struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < (1u64 << self.n)).then_some(nxt)
        };
        Some(Subset(cur as u32))
    }
}

/// `k`-subsets of the members of `ground`, in colex order.
pub fn k_subsets_of(ground: Subset, k: usize) -> impl Iterator<Item = Subset> {
    k_subsets(ground.len(), k).map(move |s| s.expand(ground))
}

/// Every subset of `{0, .., n-1}` in increasing bit order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n <= MAX_GROUND);
    (0..(1u64 << n)).map(|b| Subset(b as u32))
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact binomial coefficient.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_are_colex_and_complete() {
        let all: Vec<Subset> = k_subsets(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| s.len() == 2));
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(4, 4).collect::<Vec<_>>(), vec![Subset::full(4)]);
    }

    #[test]
    fn compress_expand_inverse() {
        let ground = Subset::from_labels([2, 4, 5, 9]);
        let s = Subset::from_labels([4, 9]);
        let c = s.compress(ground);
        assert_eq!(c, Subset::from_labels([2, 4]));
        assert_eq!(c.expand(ground), s);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(big_binomial(64, 32).to_string(), "1832624140942590534");
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Subset::from_indices([0, 2]).to_string(), "{1,3}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }
}
