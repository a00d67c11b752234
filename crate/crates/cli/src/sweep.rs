//! Parameter grids, seeded argument draws, and per-point evaluation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rbsum_core::{
    apply_x_ddx, direct_lifted, direct_parametric, direct_sum, direct_weighted, eval_decomposition,
    frisch, lifted_closed, polynomial_coeffs, weighted_closed, Rational, SumParams,
};

use crate::request::{Family, Ranges};

/// Largest numerator / denominator magnitude of a random argument.
pub const MAX_DRAW: i64 = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub params: SumParams,
    pub x: Rational,
}

/// Valid `(n, b, c)` in the ranges, lexicographic in `(n, b, c)`; pairs with
/// `b < c` are skipped.
pub fn grid(ranges: &Ranges) -> Vec<SumParams> {
    let mut out = Vec::new();
    for n in ranges.n.clone() {
        for b in ranges.b.clone() {
            for c in ranges.c.clone() {
                if let Ok(p) = SumParams::from_signed(n, b, c) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Uniform denominator in `1..=50`, then a numerator keeping `x` in
/// `[-2, 2]` with magnitude at most 50.
pub fn draw_x<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.gen_range(1..=MAX_DRAW);
    let bound = (2 * den).min(MAX_DRAW);
    let num = rng.gen_range(-bound..=bound);
    Rational::new(num.into(), den.into())
}

/// Attaches an argument to each point: always 1 for `frisch`, otherwise a
/// seeded draw per point when `seed` is given, else `fixed`.
pub fn attach_x(
    params: Vec<SumParams>,
    family: Family,
    fixed: &Rational,
    seed: Option<u64>,
) -> Vec<Point> {
    let one = Rational::from_integer(1.into());
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    params
        .into_iter()
        .map(|p| {
            let x = match (family, rng.as_mut()) {
                (Family::Frisch, _) => one.clone(),
                (_, Some(rng)) => draw_x(rng),
                (_, None) => fixed.clone(),
            };
            Point { params: p, x }
        })
        .collect()
}

/// `count` seeded points with `n <= n_max`, `1 <= c <= b <= b_max` and
/// `x` drawn by [`draw_x`].
pub fn random_points(seed: u64, count: usize, n_max: u32, b_max: u32) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=n_max);
            let b = rng.gen_range(1..=b_max);
            let c = rng.gen_range(1..=b);
            let x = draw_x(&mut rng);
            Point {
                params: SumParams::new(n, b, c).expect("c <= b by construction"),
                x,
            }
        })
        .collect()
}

/// Exact value through the closed-form route.
pub fn closed_value(family: Family, p: &SumParams, x: &Rational, m: u32) -> Rational {
    match family {
        Family::Frisch => frisch(p),
        Family::Parametric => eval_decomposition(p, x),
        Family::Weighted => weighted_closed(p, x, m),
        Family::Lifted => lifted_closed(p, x, m),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub point: Point,
    pub closed: Rational,
    pub oracle: Rational,
    pub pass: bool,
}

/// Closed form against the brute-force oracle, by exact equality. Frisch
/// ignores `x` and also checks the decomposition at `x = 1`; the parametric and weighted
/// families also check the polynomial `(x d/dx)^m` route.
pub fn verify_point(family: Family, point: &Point, m: u32) -> Check {
    let (p, x) = (&point.params, &point.x);
    let closed = closed_value(family, p, x, m);
    let (oracle, extra) = match family {
        Family::Frisch => {
            let one = Rational::from_integer(1.into());
            (direct_sum(p), eval_decomposition(p, &one) == closed)
        }
        Family::Parametric => {
            let oracle = direct_parametric(p, x);
            let poly = polynomial_coeffs(p).eval(x);
            (oracle.clone(), poly == oracle)
        }
        Family::Weighted => {
            let oracle = direct_weighted(p, x, m);
            let poly = apply_x_ddx(&polynomial_coeffs(p), m).eval(x);
            (oracle.clone(), poly == oracle)
        }
        Family::Lifted => (direct_lifted(p, x, m), true),
    };
    Check {
        point: point.clone(),
        pass: extra && closed == oracle,
        closed,
        oracle,
    }
}

/// Parallel verification; results keep the input order.
pub fn verify_all(family: Family, points: &[Point], m: u32) -> Vec<Check> {
    points
        .par_iter()
        .map(|pt| verify_point(family, pt, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rbsum_core::exact::frac;

    #[test]
    fn grid_is_lexicographic_and_skips_invalid() {
        let pts = grid(&Ranges {
            n: 0..=1,
            b: 1..=2,
            c: 1..=2,
        });
        let triples: Vec<_> = pts.iter().map(|p| (p.n(), p.b(), p.c())).collect();
        assert_eq!(
            triples,
            [
                (0, 1, 1),
                (0, 2, 1),
                (0, 2, 2),
                (1, 1, 1),
                (1, 2, 1),
                (1, 2, 2)
            ]
        );
    }

    #[test]
    fn draws_stay_in_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let two = Rational::from_integer(2.into());
        for _ in 0..2000 {
            let x = draw_x(&mut rng);
            assert!(x <= two && x >= -two.clone());
            assert!(*x.denom() <= 50.into());
        }
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let params = grid(&Ranges {
            n: 0..=3,
            b: 1..=3,
            c: 1..=3,
        });
        let a = attach_x(params.clone(), Family::Lifted, &frac(1, 2), Some(9));
        let b = attach_x(params.clone(), Family::Lifted, &frac(1, 2), Some(9));
        assert_eq!(a, b);
        let fixed = attach_x(params.clone(), Family::Lifted, &frac(1, 2), None);
        assert!(fixed.iter().all(|p| p.x == frac(1, 2)));
        let frisch = attach_x(params, Family::Frisch, &frac(1, 2), Some(9));
        assert!(frisch.iter().all(|p| p.x == frac(1, 1)));
        assert_eq!(random_points(5, 50, 20, 15), random_points(5, 50, 20, 15));
    }

    #[test]
    fn small_checks_pass() {
        let pt = Point {
            params: SumParams::new(1, 2, 1).unwrap(),
            x: frac(1, 2),
        };
        for family in [
            Family::Frisch,
            Family::Parametric,
            Family::Weighted,
            Family::Lifted,
        ] {
            assert!(verify_point(family, &pt, 2).pass, "{family}");
        }
        assert_eq!(verify_point(Family::Weighted, &pt, 1).closed, frac(-1, 6));
    }
}
