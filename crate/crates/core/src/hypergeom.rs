//! Terminating generalized hypergeometric series `pFq(upper; lower; x)`.
//!
//! Only terminating series are representable: some upper parameter must be
//! a non-positive integer `-N`, which makes the series a polynomial of
//! degree `N` in `x`. Any rational argument is accepted, `|x| > 1` included.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{as_nonpositive_integer, pochhammer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypError {
    /// No upper parameter is a non-positive integer.
    NonTerminating,
    /// Lower parameter `-M` with `M <= truncation` would divide by zero.
    LowerPole { index: usize, truncation: u64 },
}

impl fmt::Display for HypError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypError::NonTerminating => {
                f.write_str("series does not terminate: no non-positive integer upper parameter")
            }
            HypError::LowerPole { index, truncation } => write!(
                f,
                "lower parameter #{index} is a non-positive integer within the summed range 0..={truncation}"
            ),
        }
    }
}

impl core::error::Error for HypError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypSeries {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Rational,
    truncation: u64,
}

/// `d^r/dx^r F = coefficient · shifted`. `shifted` is `None` exactly when the
/// coefficient vanishes, i.e. the derivative is identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeShift {
    pub coefficient: Rational,
    pub shifted: Option<HypSeries>,
}

/// Term-by-term division by `(k+s)^m`, realized as `coefficient · lifted`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicLift {
    pub coefficient: Rational,
    pub lifted: HypSeries,
}

impl HypSeries {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        argument: Rational,
    ) -> Result<Self, HypError> {
        let truncation = upper
            .iter()
            .filter_map(as_nonpositive_integer)
            .min()
            .ok_or(HypError::NonTerminating)?;
        if let Some(index) = lower
            .iter()
            .position(|l| as_nonpositive_integer(l).is_some_and(|m| m <= truncation))
        {
            return Err(HypError::LowerPole { index, truncation });
        }
        Ok(HypSeries {
            upper,
            lower,
            argument,
            truncation,
        })
    }

    /// Gauss `2F1(a, b; c; x)`.
    pub fn gauss(a: Rational, b: Rational, c: Rational, x: Rational) -> Result<Self, HypError> {
        Self::new(alloc::vec![a, b], alloc::vec![c], x)
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    /// Index `N` past which every term vanishes.
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// `(p, q)` for a `pFq`.
    pub fn order(&self) -> (usize, usize) {
        (self.upper.len(), self.lower.len())
    }

    pub fn with_argument(&self, x: Rational) -> Self {
        HypSeries {
            argument: x,
            ..self.clone()
        }
    }

    /// Polynomial coefficients `c_k = prod (upper)_k / prod (lower)_k / k!`,
    /// `k = 0..=truncation`, via the term ratio.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms_at(&Rational::one())
    }

    /// The `truncation + 1` terms `c_k x^k`.
    pub fn terms_at(&self, x: &Rational) -> Vec<Rational> {
        let mut terms = Vec::with_capacity(self.truncation as usize + 1);
        let mut term = Rational::one();
        terms.push(term.clone());
        for k in 0..self.truncation {
            let kq = Rational::from_integer(BigInt::from(k));
            let mut num = x / Rational::from_integer(BigInt::from(k + 1));
            for a in &self.upper {
                num *= a + &kq;
            }
            let mut den = Rational::one();
            for b in &self.lower {
                den *= b + &kq;
            }
            term = term * num / den;
            terms.push(term.clone());
        }
        terms
    }

    /// Exact value at the stored argument.
    pub fn eval(&self) -> Rational {
        self.eval_at(&self.argument)
    }

    pub fn eval_at(&self, x: &Rational) -> Rational {
        self.terms_at(x)
            .into_iter()
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// r-th derivative: `d^r/dx^r pFq(a; b; x) = [prod (a)_r / prod (b)_r] pFq(a+r; b+r; x)`.
    pub fn derivative_shift(&self, r: u32) -> DerivativeShift {
        let num = self
            .upper
            .iter()
            .fold(Rational::one(), |acc, a| acc * pochhammer(a, r));
        if num.is_zero() {
            return DerivativeShift {
                coefficient: num,
                shifted: None,
            };
        }
        let den = self
            .lower
            .iter()
            .fold(Rational::one(), |acc, b| acc * pochhammer(b, r));
        let shift = Rational::from_integer(BigInt::from(r));
        let bump = |ps: &[Rational]| ps.iter().map(|p| p + &shift).collect::<Vec<_>>();
        // non-zero coefficient means every terminating upper parameter -N has r <= N
        let shifted = HypSeries::new(bump(&self.upper), bump(&self.lower), self.argument.clone())
            .expect("shift with non-zero coefficient keeps the series terminating");
        DerivativeShift {
            coefficient: num / den,
            shifted: Some(shifted),
        }
    }

    /// Divides term `k` by `(k+shift)^m` using `1/(k+s) = (1/s) (s)_k / (s+1)_k`:
    /// appends `m` upper parameters `s` and `m` lower parameters `s+1`, with
    /// overall coefficient `s^-m`.
    ///
    /// # Panics
    /// If `shift == 0`.
    pub fn lift_insert_harmonic(&self, shift: u32, m: u32) -> HarmonicLift {
        assert!(shift >= 1, "harmonic lift needs shift >= 1");
        let s = Rational::from_integer(BigInt::from(shift));
        let s1 = &s + Rational::one();
        let mut upper = self.upper.clone();
        let mut lower = self.lower.clone();
        for _ in 0..m {
            upper.push(s.clone());
            lower.push(s1.clone());
        }
        HarmonicLift {
            coefficient: Rational::new(BigInt::one(), BigInt::from(shift).pow(m)),
            lifted: HypSeries {
                upper,
                lower,
                argument: self.argument.clone(),
                truncation: self.truncation,
            },
        }
    }
}

impl fmt::Display for HypSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut upper: Vec<&Rational> = self.upper.iter().collect();
        let mut lower: Vec<&Rational> = self.lower.iter().collect();
        upper.sort();
        lower.sort();
        write!(f, "{}F{}(", upper.len(), lower.len())?;
        for (i, a) in upper.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("; ")?;
        for (i, b) in lower.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "; {})", self.argument)
    }
}
