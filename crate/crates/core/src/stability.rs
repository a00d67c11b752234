//! Cancellation in naive binary64 summation of the alternating sums.
//!
//! Terms are computed exactly, rounded once to binary64 and then summed in
//! ascending `k` with no compensation, so the measured error is the
//! summation error alone. The condition number `sum |t_k| / |sum t_k|` is
//! exact.

use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::closed::{eval_decomposition, frisch};
use crate::exact::Rational;
use crate::exact::SumParams;
use crate::oracle::parametric_terms;

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub params: SumParams,
    pub x: Rational,
    pub exact: Rational,
    /// Naive ascending-`k` summation.
    pub float_direct: f64,
    /// Neumaier-compensated summation of the same rounded terms; reported
    /// for contrast only.
    pub float_compensated: f64,
    /// Closed form computed exactly, rounded once.
    pub float_closed: f64,
    /// Relative errors, or absolute errors when `exact_zero` is set.
    pub relerr_direct: f64,
    pub relerr_compensated: f64,
    pub relerr_closed: f64,
    /// `None` iff the exact sum is zero.
    pub condition: Option<Rational>,
    pub exact_zero: bool,
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn naive_sum(terms: &[f64]) -> f64 {
    terms.iter().fold(0.0, |acc, t| acc + t)
}

fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

fn condition_of(terms: &[Rational]) -> Option<Rational> {
    let total: Rational = terms.iter().sum();
    if total.is_zero() {
        return None;
    }
    let mass: Rational = terms.iter().map(|t| t.abs()).sum();
    Some(mass / total.abs())
}

/// Naive binary64 value of `S_n(b,c;x)` and its exact condition number.
pub fn float_direct_conditioned(p: &SumParams, x: &Rational) -> (f64, Option<Rational>) {
    let terms = parametric_terms(p, x);
    let rounded: Vec<f64> = terms.iter().map(to_f64).collect();
    (naive_sum(&rounded), condition_of(&terms))
}

/// `|approx - exact| / |exact|`, evaluated exactly and rounded once; the
/// absolute error when `exact` is zero.
fn error_against(approx: f64, exact: &Rational) -> f64 {
    let Some(approx) = Rational::from_float(approx) else {
        return f64::NAN;
    };
    let diff = (approx - exact).abs();
    if exact.is_zero() {
        to_f64(&diff)
    } else {
        to_f64(&(diff / exact.abs()))
    }
}

pub fn stability_report(p: &SumParams, x: &Rational) -> StabilityReport {
    let terms = parametric_terms(p, x);
    let rounded: Vec<f64> = terms.iter().map(to_f64).collect();
    let exact: Rational = terms.iter().sum();
    let closed = if x == &Rational::from_integer(1.into()) {
        frisch(p)
    } else {
        eval_decomposition(p, x)
    };
    let float_direct = naive_sum(&rounded);
    let float_compensated = neumaier_sum(&rounded);
    let float_closed = to_f64(&closed);
    StabilityReport {
        params: *p,
        x: x.clone(),
        relerr_direct: error_against(float_direct, &exact),
        relerr_compensated: error_against(float_compensated, &exact),
        relerr_closed: error_against(float_closed, &exact),
        condition: condition_of(&terms),
        exact_zero: exact.is_zero(),
        exact,
        float_direct,
        float_compensated,
        float_closed,
    }
}
