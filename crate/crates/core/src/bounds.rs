//! Exact evaluators for counting bounds at concrete `n`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::brackets::{self, Bracket};
use crate::lp::serialize_rational;
use crate::subset::big_binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("k = {k} is outside 1..={max} or too large to evaluate")]
    BadRange { k: u64, max: u64 },
    #[error("need 1 <= r <= n, got n = {n}, r = {r}")]
    BadArguments { n: u64, r: u64 },
}

/// Largest `min(k, N - k)` evaluated exactly in [`kappa_count_upper`].
pub const COUNT_TERM_CAP: u64 = 1 << 16;

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `C(n, ⌊n/2⌋) / n`.
pub fn knuth_lower(n: u64) -> BigRational {
    assert!(n >= 1, "n must be positive");
    BigRational::new(BigInt::from(big_binomial(n, n / 2)), BigInt::from(n))
}

/// An enclosure of a base-2 logarithm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Log2Value {
    #[serde(serialize_with = "serialize_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub hi: BigRational,
    pub approx: f64,
}

impl From<Bracket> for Log2Value {
    fn from(b: Bracket) -> Self {
        let approx = b.midpoint_f64();
        Log2Value { lo: b.lo, hi: b.hi, approx }
    }
}

/// `log2(k · C(2^n (n+1), k))`, enclosed with width below `2^-40`.
pub fn kappa_count_upper(n: u32, k: u64) -> Result<Log2Value, BoundsError> {
    let slots = (n < 40).then(|| (1u64 << n) * (u64::from(n) + 1));
    let max = slots.unwrap_or(u64::MAX);
    if k == 0 || k > max || k.min(max - k) > COUNT_TERM_CAP {
        return Err(BoundsError::BadRange { k, max });
    }
    let value = big_binomial(max, k) * k;
    Ok(brackets::log2_biguint(&value).into())
}

/// Outcome of [`binom_bounds`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinomBounds {
    pub n: u64,
    pub r: u64,
    /// `C(n,r) <= (e n / r)^r`.
    pub power_bound: bool,
    /// `C(n, ⌊n/2⌋) <= 2^n sqrt(2 / (π n))`.
    pub central_upper: bool,
    /// `C(n, ⌊n/2⌋)` divided by `2^n sqrt(2 / (π n))`; tends to 1 from below for even `n`.
    pub central_ratio: f64,
}

impl BinomBounds {
    pub fn holds(&self) -> bool {
        self.power_bound && self.central_upper
    }
}

/// Evaluates both binomial bounds exactly, using the side of each bracket that
/// makes the check conservative.
pub fn binom_bounds(n: u64, r: u64) -> Result<BinomBounds, BoundsError> {
    if r == 0 || r > n {
        return Err(BoundsError::BadArguments { n, r });
    }
    let c = rat(big_binomial(n, r));
    let e = brackets::e();
    let base = &e.lo * BigRational::new(n.into(), r.into());
    let power_bound = c <= num_traits::pow::pow(base, r as usize);

    // Squared: C^2 · n · π <= 2^(2n+1).
    let central = rat(big_binomial(n, n / 2));
    let pi = brackets::pi();
    let n_rat = BigRational::from_integer(n.into());
    let two_pow = BigRational::from_integer(BigInt::one() << (2 * n + 1));
    let central_upper = &central * &central * &n_rat * &pi.hi <= two_pow;
    let reference = (2f64).powi(n as i32) * (2.0 / (std::f64::consts::PI * n as f64)).sqrt();
    let central_ratio = brackets::to_f64(&central) / reference;
    Ok(BinomBounds { n, r, power_bound, central_upper, central_ratio })
}

pub fn binom_bound_check(n: u64, r: u64) -> Result<bool, BoundsError> {
    Ok(binom_bounds(n, r)?.holds())
}
