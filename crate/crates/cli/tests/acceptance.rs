//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p rbsum --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rbsum::sweep::random_points;
use rbsum_core::exact::int;
use rbsum_core::*;

const SEED_DECOMPOSITION: u64 = 20_240_601;
const SEED_QUADRATURE: u64 = 77;
const SEED_CLI: &str = "11";

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn sp(n: u32, b: u32, c: u32) -> SumParams {
    SumParams::new(n, b, c).unwrap()
}

fn frisch_grid() -> Vec<SumParams> {
    let mut out = Vec::new();
    for n in 0..=25 {
        for c in 1..=6 {
            for b in c..=c + 10 {
                out.push(sp(n, b, c));
            }
        }
    }
    out
}

fn c1_frisch() -> Verdict {
    let grid = frisch_grid();
    for p in &grid {
        if frisch(p) != direct_sum(p) {
            return Err(format!("mismatch at {p}"));
        }
    }
    Ok(format!("{} points exact", grid.len()))
}

fn c2_inverse_binomial() -> Verdict {
    let mut count = 0;
    for b in 1..=12u32 {
        for c in 1..=b {
            for k in 0..=12u32 {
                let v = inverse_binomial_via_beta(&sp(0, b, c), k);
                if !(v * binomial(u64::from(b + k), c.into())).is_one() {
                    return Err(format!("b={b} c={c} k={k}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples exact"))
}

fn c3_decomposition() -> Verdict {
    let pts = random_points(SEED_DECOMPOSITION, 200, 20, 15);
    for pt in &pts {
        if eval_decomposition(&pt.params, &pt.x) != direct_parametric(&pt.params, &pt.x) {
            return Err(format!("mismatch at {} x={}", pt.params, pt.x));
        }
    }
    Ok(format!("{} seeded points exact", pts.len()))
}

fn c4_unit_argument() -> Verdict {
    let grid = frisch_grid();
    for p in &grid {
        if eval_decomposition(p, &int(1)) != frisch(p) {
            return Err(format!("mismatch at {p}"));
        }
    }
    Ok(format!("{} points exact", grid.len()))
}

fn c5_weighted() -> Verdict {
    let pts = random_points(SEED_DECOMPOSITION, 200, 20, 15);
    for pt in &pts {
        let poly = polynomial_coeffs(&pt.params);
        for m in 0..=4 {
            let closed = weighted_closed(&pt.params, &pt.x, m);
            let direct = direct_weighted(&pt.params, &pt.x, m);
            let operator = apply_x_ddx(&poly, m).eval(&pt.x);
            if closed != direct || direct != operator {
                return Err(format!("mismatch at {} x={} m={m}", pt.params, pt.x));
            }
        }
    }
    Ok(format!("{} points x m=0..4, three-way exact", pts.len()))
}

fn differentiate(coeffs: &[Rational]) -> Vec<Rational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a * BigInt::from(k))
        .collect()
}

fn same_polynomial(a: &[Rational], b: &[Rational]) -> bool {
    let zero = Rational::zero();
    (0..a.len().max(b.len())).all(|i| a.get(i).unwrap_or(&zero) == b.get(i).unwrap_or(&zero))
}

fn c6_derivative_shift() -> Verdict {
    let mut checks = 0;
    for n in 0..=8u32 {
        for (b, c) in [(1, 1), (4, 2), (7, 3), (9, 9), (12, 5)] {
            let d = beta_decomposition(&sp(n, b, c));
            for series in std::iter::once(&d.series1).chain(d.series2.as_ref()) {
                let mut poly = series.coefficients();
                for r in 0..=n {
                    let shift = series.derivative_shift(r);
                    let expanded: Vec<Rational> = match &shift.shifted {
                        Some(s) => s
                            .coefficients()
                            .iter()
                            .map(|v| v * &shift.coefficient)
                            .collect(),
                        None => Vec::new(),
                    };
                    if !same_polynomial(&poly, &expanded) {
                        return Err(format!("{series} r={r}"));
                    }
                    poly = differentiate(&poly);
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} (series, r) pairs exact"))
}

fn c7_lifts() -> Verdict {
    let pts = random_points(SEED_DECOMPOSITION, 200, 20, 15);
    for pt in &pts {
        let d = beta_decomposition(&pt.params);
        let (p1, q1) = d.series1.order();
        for m in 0..=3u32 {
            if lifted_closed(&pt.params, &pt.x, m) != direct_lifted(&pt.params, &pt.x, m) {
                return Err(format!("mismatch at {} x={} m={m}", pt.params, pt.x));
            }
            let (l1, l2) = d.lifts(m);
            let mu = m as usize;
            if l1.lifted.order() != (p1 + mu, q1 + mu) {
                return Err(format!("order of first lift at m={m}"));
            }
            if let (Some(l2), Some(s2)) = (l2, &d.series2) {
                let (p2, q2) = s2.order();
                if l2.lifted.order() != (p2 + mu, q2 + mu) {
                    return Err(format!("order of second lift at m={m}"));
                }
            }
        }
    }
    Ok(format!(
        "{} points x m=0..3 exact, orders p+m, q+m",
        pts.len()
    ))
}

fn c8_quadrature() -> Verdict {
    let pts = random_points(SEED_QUADRATURE, 50, 10, 15);
    let mut worst = 0.0f64;
    for pt in &pts {
        let exact = direct_parametric(&pt.params, &pt.x).to_f64().unwrap();
        let approx = quad_check(&pt.params, &pt.x, 1e-10).map_err(|e| e.to_string())?;
        let err = (approx - exact).abs();
        worst = worst.max(err);
        if err > 1e-9 || err.is_nan() {
            return Err(format!("{} x={}: error {err:e}", pt.params, pt.x));
        }
    }
    Ok(format!(
        "{} points, max abs error {worst:.2e} <= 1e-9",
        pts.len()
    ))
}

fn c9_stability() -> Verdict {
    let reports: Vec<StabilityReport> = [5u32, 10, 20, 40]
        .iter()
        .map(|&n| stability_report(&sp(n, n + 5, 2), &int(1)))
        .collect();
    let conditions: Vec<Rational> = reports
        .iter()
        .map(|r| r.condition.clone().ok_or("zero sum on ladder"))
        .collect::<Result<_, _>>()?;
    if conditions.windows(2).any(|w| w[0] > w[1]) {
        return Err("condition number decreases".into());
    }
    if let Some(r) = reports
        .iter()
        .find(|r| r.relerr_closed.is_nan() || r.relerr_closed > 1e-12)
    {
        return Err(format!(
            "relerr_closed {:e} at n={}",
            r.relerr_closed,
            r.params.n()
        ));
    }
    let last = &reports[3];
    if last.relerr_direct.partial_cmp(&last.relerr_closed) != Some(std::cmp::Ordering::Greater) {
        return Err(format!(
            "n=40 relerr_direct {:e} <= relerr_closed {:e}",
            last.relerr_direct, last.relerr_closed
        ));
    }
    let worst_closed = reports.iter().map(|r| r.relerr_closed).fold(0.0, f64::max);
    Ok(format!(
        "condition {:.1e} -> {:.1e}, max relerr_closed {worst_closed:.1e}, relerr_direct(40) {:.1e}",
        conditions[0].to_f64().unwrap(),
        conditions[3].to_f64().unwrap(),
        last.relerr_direct
    ))
}

fn c10_cli_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_rbsum");
    let sweep = [
        "--n-range",
        "0..20",
        "--b-range",
        "1..15",
        "--c-range",
        "1..15",
        "--seed",
        SEED_CLI,
    ];
    let suites: [Vec<&str>; 4] = [
        vec![
            "--family",
            "frisch",
            "--n-range",
            "0..25",
            "--b-range",
            "1..16",
            "--c-range",
            "1..6",
        ],
        [&["--family", "parametric"][..], &sweep].concat(),
        [&["--family", "weighted", "-m", "4"][..], &sweep].concat(),
        [&["--family", "lifted", "-m", "3"][..], &sweep].concat(),
    ];
    let mut runs = 0;
    for suite in &suites {
        let go = || {
            Command::new(bin)
                .arg("verify")
                .args(suite)
                .env_remove("RBSUM_OUTPUT")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (go()?, go()?);
        if a.status.code() != Some(0) || b.status.code() != Some(0) {
            return Err(format!("{} exited {:?}", suite[1], a.status.code()));
        }
        if a.stdout != b.stdout {
            return Err(format!("{} output differs between runs", suite[1]));
        }
        runs += 2;
    }
    Ok(format!("{runs} verify runs, byte-identical pairs, exit 0"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1  Frisch identity vs direct sum", c1_frisch),
        ("C2  inverse binomial via Beta", c2_inverse_binomial),
        ("C3  two-term decomposition vs direct", c3_decomposition),
        ("C4  decomposition at x=1 vs Frisch", c4_unit_argument),
        ("C5  weighted sums, three paths", c5_weighted),
        (
            "C6  derivative shift vs differentiation",
            c6_derivative_shift,
        ),
        ("C7  harmonic lifts and their order", c7_lifts),
        ("C8  quadrature within 1e-9", c8_quadrature),
        ("C9  stability ladder", c9_stability),
        ("C10 CLI determinism", c10_cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.2} s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({secs:.2} s)");
            }
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
