//! Rational enclosures of irrational quantities.
//!
//! Every function returns an interval `[lo, hi]` with rational endpoints that
//! provably contains the true value and has width below `2^-40`. Inequalities
//! involving `e`, `π` or logarithms are decided by comparing against the
//! appropriate endpoint, so no floating-point rounding enters a check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision for intermediate rounding, in bits.
const PRECISION: u64 = 96;

/// A closed interval of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn exact(x: BigRational) -> Self {
        Bracket { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Scales by a nonnegative rational.
    pub fn scale(&self, k: &BigRational) -> Bracket {
        debug_assert!(!k.is_negative());
        Bracket { lo: &self.lo * k, hi: &self.hi * k }
    }

    pub fn add(&self, other: &Bracket) -> Bracket {
        Bracket { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> Bracket {
        Bracket { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-PRECISION` not above `x`.
pub fn round_down(x: &BigRational) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(PRECISION));
    BigRational::new(scaled.floor().to_integer(), pow2(PRECISION))
}

/// Smallest multiple of `2^-PRECISION` not below `x`.
pub fn round_up(x: &BigRational) -> BigRational {
    let scaled = x * BigRational::from_integer(pow2(PRECISION));
    BigRational::new(scaled.ceil().to_integer(), pow2(PRECISION))
}

/// `2 atanh(u) = ln((1+u)/(1-u))` for `0 <= u <= 1/3`.
fn two_atanh(u: &BigRational) -> Bracket {
    debug_assert!(!u.is_negative() && u <= &BigRational::new(1.into(), 3.into()));
    let u2 = u * u;
    let mut power = u.clone();
    let mut lo = BigRational::zero();
    // 3^-(2*28+1) < 2^-90
    let terms = 28u32;
    for j in 0..terms {
        lo += round_down(&(&power / BigRational::from_integer((2 * j + 1).into())));
        power = round_down(&(&power * &u2));
    }
    // Tail below u^(2N+1) / (2N+1) / (1 - u^2) <= (9/8) u^(2N+1). The powers above
    // were rounded down, so bound the tail with an exact u^(2N+1).
    let exact_power = num_traits::pow::pow(u.clone(), (2 * terms + 1) as usize);
    let tail = exact_power * BigRational::new(9.into(), 8.into());
    // The j-th rounded power is at most j units of 2^-PRECISION low and each
    // quotient loses one more unit, so N^2 + N units cover all rounding.
    let slack = BigRational::new(BigInt::from(terms * terms + terms), pow2(PRECISION));
    let hi = round_up(&(&lo + tail + slack));
    let two = BigRational::from_integer(2.into());
    Bracket { lo: &lo * &two, hi: &hi * &two }
}

pub fn ln2() -> Bracket {
    two_atanh(&BigRational::new(1.into(), 3.into()))
}

/// Encloses `ln x` for `x > 0`.
pub fn ln(x: &BigRational) -> Bracket {
    assert!(x.is_positive(), "ln of a nonpositive number");
    if x.is_one() {
        return Bracket::exact(BigRational::zero());
    }
    if x < &BigRational::one() {
        return ln(&x.recip()).neg();
    }
    // x = 2^k * y with y in [1, 2).
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let mut k = num_bits - den_bits;
    let scale = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow2(k as u64))
        } else {
            BigRational::new(BigInt::one(), pow2((-k) as u64))
        }
    };
    let mut y = x / scale(k);
    if y < BigRational::one() {
        k -= 1;
        y = x / scale(k);
    }
    debug_assert!(y >= BigRational::one() && y < BigRational::from_integer(2.into()));
    let one = BigRational::one();
    let u = (&y - &one) / (&y + &one);
    let frac = two_atanh(&u);
    let log2 = ln2().scale(&BigRational::from_integer(k.into()));
    frac.add(&log2)
}

/// Encloses `e`.
pub fn e() -> Bracket {
    let mut lo = BigRational::zero();
    let mut factorial = BigInt::one();
    let terms = 34u32;
    for j in 0..terms {
        if j > 0 {
            factorial *= j;
        }
        lo += BigRational::new(BigInt::one(), factorial.clone());
    }
    // Remaining terms sum to less than 2 / terms!.
    factorial *= terms;
    let hi = &lo + BigRational::new(2.into(), factorial);
    Bracket { lo, hi }
}

/// `atan(1/q)` from its alternating series.
fn atan_inv(q: u32, terms: u32) -> Bracket {
    let q = BigInt::from(q);
    let mut sum = BigRational::zero();
    let mut prev = BigRational::zero();
    let mut power = q.clone();
    let q2 = &q * &q;
    for j in 0..=terms {
        prev = sum.clone();
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if j.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &q2;
    }
    if prev < sum {
        Bracket { lo: prev, hi: sum }
    } else {
        Bracket { lo: sum, hi: prev }
    }
}

/// Encloses `π` via Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> Bracket {
    let a = atan_inv(5, 30).scale(&BigRational::from_integer(16.into()));
    let b = atan_inv(239, 12).scale(&BigRational::from_integer(4.into()));
    a.add(&b.neg())
}

const MANTISSA_BITS: u64 = 128;

/// `log2` of a positive integer, enclosed. Exact when `v` is a power of two.
pub fn log2_biguint(v: &BigUint) -> Bracket {
    assert!(!v.is_zero(), "log2 of zero");
    // Keep 128 leading bits: v lies in [t, t + 1) · 2^shift.
    let shift = v.bits().saturating_sub(MANTISSA_BITS);
    let t = v >> shift;
    let exact = (&t << shift) == *v;
    let k = t.bits() - 1;
    let offset = BigRational::from_integer((k + shift).into());
    let lower = BigRational::new(BigInt::from(t.clone()), pow2(k));
    let upper = if exact { lower.clone() } else { BigRational::new(BigInt::from(t + 1u32), pow2(k)) };
    if exact && lower.is_one() {
        return Bracket::exact(offset);
    }
    // log2(m) = ln(m) / ln 2, with ln(m) >= 0 and ln 2 > 0.
    let l2 = ln2();
    let lo = if lower.is_one() { BigRational::zero() } else { ln(&lower).lo / &l2.hi };
    let hi = ln(&upper).hi / &l2.lo;
    Bracket { lo: &offset + lo, hi: offset + hi }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
