//! Exact scalars and the combinatorial primitives built on them.
//!
//! All integer quantities are arbitrary precision: `n + b` overflows a
//! 64-bit factorial long before the sums become interesting.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (zero is `0/1`).
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small integers.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Convenience constructor for small fractions; `den` must be non-zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParamError> {
    let malformed = || ParamError::MalformedRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(Rational::new(num, den))
}

/// A parameter triple that violates `b >= c > 0, n >= 0`, or a rational
/// that failed to parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamError {
    NegativeN(i64),
    NonPositiveC(i64),
    BLessThanC { b: i64, c: i64 },
    OutOfRange(i64),
    MalformedRational(String),
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::NegativeN(n) => write!(f, "constraint n >= 0 violated (n = {n})"),
            ParamError::NonPositiveC(c) => write!(f, "constraint c > 0 violated (c = {c})"),
            ParamError::BLessThanC { b, c } => {
                write!(f, "constraint b >= c violated (b = {b}, c = {c})")
            }
            ParamError::OutOfRange(v) => write!(f, "parameter {v} exceeds the supported range"),
            ParamError::MalformedRational(s) => {
                write!(
                    f,
                    "malformed rational {s:?} (expected \"p/q\" or \"p\" with q != 0)"
                )
            }
        }
    }
}

impl core::error::Error for ParamError {}

/// The triple `(n, b, c)` of a reciprocal binomial sum, with `b >= c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumParams {
    n: u32,
    b: u32,
    c: u32,
}

impl SumParams {
    pub fn new(n: u32, b: u32, c: u32) -> Result<Self, ParamError> {
        Self::from_signed(n.into(), b.into(), c.into())
    }

    /// Validates signed input, reporting the first violated constraint.
    pub fn from_signed(n: i64, b: i64, c: i64) -> Result<Self, ParamError> {
        if n < 0 {
            return Err(ParamError::NegativeN(n));
        }
        if c <= 0 {
            return Err(ParamError::NonPositiveC(c));
        }
        if b < c {
            return Err(ParamError::BLessThanC { b, c });
        }
        let narrow = |v: i64| u32::try_from(v).map_err(|_| ParamError::OutOfRange(v));
        Ok(SumParams {
            n: narrow(n)?,
            b: narrow(b)?,
            c: narrow(c)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }
}

impl fmt::Display for SumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} b={} c={}", self.n, self.b, self.c)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    let Ok(k) = u64::try_from(k) else {
        return BigInt::zero();
    };
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: acc = C(n-k+i, i) after step i
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += BigInt::one();
    }
    acc
}

/// `m! n! / (m+n+1)! = ∫₀¹ t^m (1-t)^n dt`.
pub fn beta_int(m: u32, n: u32) -> Rational {
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    // hi! cancels against (m+n+1)!, leaving lo! / ((hi+1) ... (hi+lo+1))
    let den = (u64::from(hi) + 1..=u64::from(hi) + u64::from(lo) + 1)
        .fold(BigInt::one(), |acc, k| acc * k);
    Rational::new(factorial(lo), den)
}

/// `1 / C(b+k, c)` computed as `(b+k+1) · B(c, b+k-c)`.
pub fn inverse_binomial_via_beta(p: &SumParams, k: u32) -> Rational {
    let (b, c) = (p.b(), p.c());
    let top = b + k;
    beta_int(c, top - c) * BigInt::from(top + 1)
}

/// `1 / C(n, k)` for `0 <= k <= n`.
pub(crate) fn recip_binomial(n: u64, k: u64) -> Rational {
    Rational::new(BigInt::one(), binomial(n, k as i64))
}

/// `Some(N)` when `r == -N` for a non-negative integer `N`.
pub(crate) fn as_nonpositive_integer(r: &Rational) -> Option<u64> {
    if r.is_integer() && !r.numer().is_positive() {
        u64::try_from(-r.numer()).ok()
    } else {
        None
    }
}
