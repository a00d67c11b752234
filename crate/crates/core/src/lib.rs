//! Exact evaluation of alternating reciprocal binomial sums
//!
//! ```text
//! S_n(b,c;x) = sum_{k=0}^{n} (-1)^k C(n,k) x^k / C(b+k,c),   b >= c > 0, n >= 0
//! ```
//!
//! together with their weighted (`k^m`) and integral-lifted (`1/(k+1)^m`)
//! relatives. Every family has two independent evaluation routes:
//!
//! - [`oracle`]: brute-force summation in exact rational arithmetic, the ground truth;
//! - [`closed`]: Frisch's closed form and the two-term Beta / terminating
//!   hypergeometric decomposition, with derivative shifts and harmonic lifts.
//!
//! [`stability`] measures how badly naive binary64 summation cancels, and
//! [`quadrature`] integrates the Beta-integral representation numerically.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod closed;
pub mod exact;
pub mod hypergeom;
pub mod oracle;
pub mod quadrature;
pub mod stability;

pub use closed::{
    beta_decomposition, eval_decomposition, frisch, lifted_closed, stirling2, weighted_closed,
    Decomposition,
};
pub use exact::{
    beta_int, binomial, factorial, frac, int, inverse_binomial_via_beta, parse_rational,
    pochhammer, ParamError, Rational, SumParams,
};
pub use hypergeom::{DerivativeShift, HarmonicLift, HypError, HypSeries};
pub use oracle::{
    apply_x_ddx, direct_lifted, direct_parametric, direct_sum, direct_weighted, parametric_terms,
    polynomial_coeffs, SumPolynomial,
};
pub use quadrature::{quad_check, QuadError, Quadrature};
pub use stability::{float_direct_conditioned, stability_report, StabilityReport};
