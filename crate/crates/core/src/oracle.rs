//! Brute-force reference sums. Every closed form in [`crate::closed`] is
//! checked against these; they share nothing with the hypergeometric route
//! beyond `binomial`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, recip_binomial, Rational, SumParams};

/// Dense coefficients `a_k = (-1)^k C(n,k) / C(b+k,c)` of `S_n(b,c;x)` as a
/// polynomial in `x`, `k = 0..=n`. After [`apply_x_ddx`] the entries are
/// `k^m a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPolynomial {
    coefficients: Vec<Rational>,
}

impl SumPolynomial {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }
}

/// Term `k` of the parametric sum without the `x^k` factor.
fn base_coefficient(p: &SumParams, k: u32) -> Rational {
    let mag = Rational::from_integer(binomial(p.n().into(), k.into()))
        * recip_binomial(u64::from(p.b() + k), p.c().into());
    if k % 2 == 1 {
        -mag
    } else {
        mag
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

/// The `n + 1` terms `(-1)^k C(n,k) x^k / C(b+k,c)`, in index order.
pub fn parametric_terms(p: &SumParams, x: &Rational) -> Vec<Rational> {
    (0..=p.n())
        .map(|k| base_coefficient(p, k) * pow(x, k))
        .collect()
}

/// `S_n(b,c) = sum (-1)^k C(n,k) / C(b+k,c)`.
pub fn direct_sum(p: &SumParams) -> Rational {
    (0..=p.n()).map(|k| base_coefficient(p, k)).sum()
}

/// `S_n(b,c;x)`.
pub fn direct_parametric(p: &SumParams, x: &Rational) -> Rational {
    parametric_terms(p, x).into_iter().sum()
}

/// `T_n^(m)(b,c;x) = sum (-1)^k C(n,k) k^m x^k / C(b+k,c)`, with `0^0 = 1`.
pub fn direct_weighted(p: &SumParams, x: &Rational, m: u32) -> Rational {
    (0..=p.n())
        .map(|k| {
            let weight = BigInt::from(k).pow(m);
            base_coefficient(p, k) * pow(x, k) * weight
        })
        .sum()
}

/// `sum (-1)^k C(n,k) x^k / ((k+1)^m C(b+k,c))`.
pub fn direct_lifted(p: &SumParams, x: &Rational, m: u32) -> Rational {
    (0..=p.n())
        .map(|k| {
            let kernel = Rational::new(BigInt::one(), BigInt::from(k + 1).pow(m));
            base_coefficient(p, k) * pow(x, k) * kernel
        })
        .sum()
}

pub fn polynomial_coeffs(p: &SumParams) -> SumPolynomial {
    SumPolynomial {
        coefficients: (0..=p.n()).map(|k| base_coefficient(p, k)).collect(),
    }
}

/// `(x d/dx)^m` on a power series: `a_k -> k^m a_k`.
pub fn apply_x_ddx(poly: &SumPolynomial, m: u32) -> SumPolynomial {
    SumPolynomial {
        coefficients: poly
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, a)| a * BigInt::from(k).pow(m))
            .collect(),
    }
}

/// Checks the sign pattern `+, -, +, ...` of a freshly extracted polynomial.
pub fn signs_alternate(poly: &SumPolynomial) -> bool {
    poly.coefficients.iter().enumerate().all(|(k, a)| {
        if k % 2 == 0 {
            a.is_positive()
        } else {
            a.is_negative()
        }
    })
}
