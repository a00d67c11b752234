//! Globally adaptive Gauss–Kronrod (7, 15) quadrature and the Beta-integral
//! representation of the parametric sum.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::fmt;

use num_traits::ToPrimitive;

use crate::exact::{Rational, SumParams};

/// Integrand evaluations allowed before giving up.
pub const EVALUATION_BUDGET: usize = 1_000_000;

#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum over subintervals of `|K15 - G7|`.
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadError {
    InvalidTolerance(f64),
    NoConvergence(Quadrature),
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::InvalidTolerance(tol) => write!(f, "tolerance must be positive, got {tol}"),
            QuadError::NoConvergence(q) => write!(
                f,
                "no convergence within {} evaluations (estimate {} ± {})",
                q.evaluations, q.value, q.error_estimate
            ),
        }
    }
}

impl core::error::Error for QuadError {}

#[derive(Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

// heap order: largest error first
impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for (j, (&node, &wk)) in KRONROD_NODES[..7]
        .iter()
        .zip(&KRONROD_WEIGHTS[..7])
        .enumerate()
    {
        let dx = half * node;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += wk * pair;
        if j % 2 == 1 {
            gauss += GAUSS_WEIGHTS[j / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[lo, hi]` until the summed error estimate is at most
/// `tol`, always bisecting the panel with the largest estimate.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Quadrature, QuadError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(QuadError::InvalidTolerance(tol));
    }
    let mut panels = BinaryHeap::new();
    panels.push(kronrod15(&f, lo, hi));
    let mut evaluations = 15;
    let totals = |panels: &BinaryHeap<Panel>, evaluations| Quadrature {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    };
    let mut running = panels.peek().map_or(0.0, |p| p.error);
    loop {
        if running <= tol {
            // re-sum so update drift cannot fake convergence
            let result = totals(&panels, evaluations);
            if result.error_estimate <= tol {
                return Ok(result);
            }
            running = result.error_estimate;
        }
        if evaluations + 30 > EVALUATION_BUDGET {
            return Err(QuadError::NoConvergence(totals(&panels, evaluations)));
        }
        let worst = panels.pop().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod15(&f, worst.lo, mid);
        let right = kronrod15(&f, mid, worst.hi);
        running += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        evaluations += 30;
    }
}

fn powu(base: f64, exp: u32) -> f64 {
    (0..exp).fold(1.0, |acc, _| acc * base)
}

/// `t^c (1-t)^(b-c) [(b+1) (1-x(1-t))^n - n x (1-t) (1-x(1-t))^(n-1)]`.
pub fn parametric_integrand(p: &SumParams, x: f64, t: f64) -> f64 {
    let (n, b, c) = (p.n(), p.b(), p.c());
    let s = 1.0 - t;
    let y = 1.0 - x * s;
    let weight = powu(t, c) * powu(s, b - c);
    let mut bracket = f64::from(b + 1) * powu(y, n);
    if n > 0 {
        bracket -= f64::from(n) * x * s * powu(y, n - 1);
    }
    weight * bracket
}

/// Numerical value of `S_n(b,c;x)` from its Beta-integral representation.
pub fn quad_check(p: &SumParams, x: &Rational, tol: f64) -> Result<f64, QuadError> {
    let xf = x.to_f64().unwrap_or(f64::NAN);
    integrate(|t| parametric_integrand(p, xf, t), 0.0, 1.0, tol).map(|q| q.value)
}
