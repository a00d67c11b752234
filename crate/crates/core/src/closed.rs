//! Closed forms: Frisch's identity and the two-term Beta / Gauss
//! decomposition
//!
//! ```text
//! S_n(b,c;x) = I1(x) - I2(x)
//! I1(x) = (b+1) B(b-c+1, c+1) 2F1(-n,  b-c+1; b+2; x)
//! I2(x) = n x   B(b-c+2, c+1) 2F1(1-n, b-c+2; b+3; x)
//! ```
//!
//! with `B(α, β)` the Beta function, so `B(m+1, n+1) = beta_int(m, n)`.
//! Weighted sums apply `(x d/dx)^m` through derivative shifts of both
//! series; integral lifts insert harmonic parameters into them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{beta_int, binomial, Rational, SumParams};
use crate::hypergeom::{HarmonicLift, HypSeries};

/// `S_n(b,c) = c / (n+c) / C(n+b, b-c)`.
pub fn frisch(p: &SumParams) -> Rational {
    let (n, b, c) = (p.n(), p.b(), p.c());
    let ratio = Rational::new(BigInt::from(c), BigInt::from(n + c));
    ratio / Rational::from_integer(binomial(u64::from(n + b), i64::from(b - c)))
}

/// `value(x) = prefactor1 · series1(x) - prefactor2 · x · series2(x)`.
///
/// The series are stored with argument 1 and evaluated with
/// [`HypSeries::eval_at`]. `series2` is absent when `n = 0`: its upper
/// parameter `1 - n` would be `1` and the series would not terminate, but
/// `prefactor2` carries the factor `n` and vanishes anyway.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub prefactor1: Rational,
    pub series1: HypSeries,
    pub prefactor2: Rational,
    pub series2: Option<HypSeries>,
    /// Power of `x` multiplying the second term (always 1).
    pub x_power2: u32,
}

impl Decomposition {
    pub fn value(&self, x: &Rational) -> Rational {
        let first = &self.prefactor1 * self.series1.eval_at(x);
        match &self.series2 {
            Some(s2) => first - &self.prefactor2 * x * s2.eval_at(x),
            None => first,
        }
    }

    /// `(x d/dx)^m value(x)`, expanded as `sum_r S(m,r) x^r d^r/dx^r` with
    /// `d^r/dx^r [x F] = x F^(r) + r F^(r-1)` for the second term.
    pub fn weighted_value(&self, x: &Rational, m: u32) -> Rational {
        let stirling = stirling2_row(m);
        let mut total = Rational::zero();
        let mut x_pow = Rational::one();
        for (r, s_mr) in (0u32..).zip(stirling) {
            if !s_mr.is_zero() {
                let mut inner = &self.prefactor1 * nth_derivative(&self.series1, r, x);
                if let Some(s2) = &self.series2 {
                    let mut d = x * nth_derivative(s2, r, x);
                    if r > 0 {
                        d += nth_derivative(s2, r - 1, x) * BigInt::from(r);
                    }
                    inner -= &self.prefactor2 * d;
                }
                total += inner * &x_pow * s_mr;
            }
            x_pow *= x;
        }
        total
    }

    /// The `m`-fold harmonic lifts of both series: shift 1 for the first,
    /// shift 2 for the second (its explicit `x` makes term `k` carry `x^(k+1)`).
    pub fn lifts(&self, m: u32) -> (HarmonicLift, Option<HarmonicLift>) {
        (
            self.series1.lift_insert_harmonic(1, m),
            self.series2.as_ref().map(|s| s.lift_insert_harmonic(2, m)),
        )
    }

    /// `sum_k a_k x^k / (k+1)^m` where `value(x) = sum_k a_k x^k`.
    pub fn lifted_value(&self, x: &Rational, m: u32) -> Rational {
        let (l1, l2) = self.lifts(m);
        let first = &self.prefactor1 * l1.coefficient * l1.lifted.eval_at(x);
        match l2 {
            Some(l2) => first - &self.prefactor2 * x * l2.coefficient * l2.lifted.eval_at(x),
            None => first,
        }
    }
}

fn nth_derivative(series: &HypSeries, r: u32, x: &Rational) -> Rational {
    let d = series.derivative_shift(r);
    match d.shifted {
        Some(s) => d.coefficient * s.eval_at(x),
        None => Rational::zero(),
    }
}

fn int(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn beta_decomposition(p: &SumParams) -> Decomposition {
    let (n, b, c) = (p.n(), p.b(), p.c());
    let one = Rational::one();
    let prefactor1 = beta_int(b - c, c) * BigInt::from(b + 1);
    let series1 = HypSeries::gauss(-int(n), int(b - c + 1), int(b + 2), one.clone())
        .expect("-n terminates and b+2 > 0");
    let (prefactor2, series2) = if n == 0 {
        (Rational::zero(), None)
    } else {
        let s2 = HypSeries::gauss(int(1) - int(n), int(b - c + 2), int(b + 3), one)
            .expect("1-n terminates for n >= 1 and b+3 > 0");
        (beta_int(b - c + 1, c) * BigInt::from(n), Some(s2))
    };
    Decomposition {
        prefactor1,
        series1,
        prefactor2,
        series2,
        x_power2: 1,
    }
}

pub fn eval_decomposition(p: &SumParams, x: &Rational) -> Rational {
    beta_decomposition(p).value(x)
}

/// `T_n^(m)(b,c;x)` through derivative shifts of the decomposition.
pub fn weighted_closed(p: &SumParams, x: &Rational, m: u32) -> Rational {
    beta_decomposition(p).weighted_value(x, m)
}

/// The `m`-fold harmonic lift through `pFq` forms of the decomposition.
pub fn lifted_closed(p: &SumParams, x: &Rational, m: u32) -> Rational {
    beta_decomposition(p).lifted_value(x, m)
}

/// `S(m, 0..=m)`, Stirling numbers of the second kind.
fn stirling2_row(m: u32) -> Vec<BigInt> {
    let mut row = alloc::vec![BigInt::one()];
    for i in 1..=m as usize {
        let mut next = alloc::vec![BigInt::zero(); i + 1];
        for r in 1..=i {
            let keep = if r < i { &row[r] * r } else { BigInt::zero() };
            next[r] = keep + &row[r - 1];
        }
        row = next;
    }
    row
}

/// Stirling number of the second kind `S(m, r)`; zero for `r > m`.
pub fn stirling2(m: u32, r: u32) -> BigInt {
    stirling2_row(m)
        .into_iter()
        .nth(r as usize)
        .unwrap_or_else(BigInt::zero)
}
