//! Text, CSV and JSON rendering. Rationals are always `"p/q"` strings
//! (`"p"` for integers); floats are shortest round-trip decimals.

use std::fmt::Write as _;

use rbsum_core::{Decomposition, HarmonicLift, HypSeries, Rational, StabilityReport};
use serde::Serialize;

use crate::request::Family;
use crate::sweep::Check;

pub fn q(r: &Rational) -> String {
    r.to_string()
}

/// Shortest decimal that round-trips; exponent form only at extreme
/// magnitudes.
pub fn float(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Debug, Serialize)]
pub struct SeriesJson {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    pub x: String,
}

impl SeriesJson {
    pub fn new(series: &HypSeries, x: &Rational) -> Self {
        SeriesJson {
            upper: series.upper().iter().map(q).collect(),
            lower: series.lower().iter().map(q).collect(),
            x: q(x),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub prefactor1: String,
    pub series1: SeriesJson,
    pub prefactor2: String,
    pub series2: Option<SeriesJson>,
}

impl DecompositionJson {
    pub fn new(d: &Decomposition, x: &Rational) -> Self {
        DecompositionJson {
            prefactor1: q(&d.prefactor1),
            series1: SeriesJson::new(&d.series1, x),
            prefactor2: q(&d.prefactor2),
            series2: d.series2.as_ref().map(|s| SeriesJson::new(s, x)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LiftJson {
    pub coefficient: String,
    pub series: SeriesJson,
}

impl LiftJson {
    pub fn new(l: &HarmonicLift, x: &Rational) -> Self {
        LiftJson {
            coefficient: q(&l.coefficient),
            series: SeriesJson::new(&l.lifted, x),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValueRow {
    pub n: u32,
    pub b: u32,
    pub c: u32,
    pub x: String,
    pub m: u32,
    pub family: &'static str,
    pub exact: String,
    pub float: f64,
}

impl ValueRow {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.b,
            self.c,
            self.x,
            self.m,
            self.family,
            self.exact,
            float(self.float)
        )
    }

    fn text(&self) -> String {
        format!(
            "{} {} {} {} {} {} {} {}",
            self.n,
            self.b,
            self.c,
            self.x,
            self.m,
            self.family,
            self.exact,
            float(self.float)
        )
    }
}

pub const VALUE_HEADER: &str = "n,b,c,x,m,family,exact,float";
pub const STABILITY_HEADER: &str =
    "n,b,c,x,m,family,exact,float,relerr_direct,relerr_closed,condition";

#[derive(Debug, Serialize)]
pub struct EvalJson {
    pub subcommand: &'static str,
    #[serde(flatten)]
    pub row: ValueRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifted: Option<Vec<LiftJson>>,
}

pub fn eval_text(row: &ValueRow) -> String {
    format!("{}\n{}\n", row.exact, float(row.float))
}

pub fn eval_csv(row: &ValueRow) -> String {
    format!("{VALUE_HEADER}\n{}\n", row.csv())
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
pub struct TableJson {
    pub subcommand: &'static str,
    pub family: &'static str,
    pub rows: Vec<ValueRow>,
}

pub fn table_text(rows: &[ValueRow]) -> String {
    let mut out = String::from("n b c x m family exact float\n");
    for r in rows {
        out.push_str(&r.text());
        out.push('\n');
    }
    out
}

pub fn table_csv(rows: &[ValueRow]) -> String {
    let mut out = format!("{VALUE_HEADER}\n");
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn summary(checks: &[Check]) -> String {
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        format!("all {} points PASS", checks.len())
    } else {
        format!("{failed} of {} points FAIL", checks.len())
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRowJson {
    pub n: u32,
    pub b: u32,
    pub c: u32,
    pub x: String,
    pub m: u32,
    pub closed: String,
    pub oracle: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub subcommand: &'static str,
    pub family: &'static str,
    pub m: u32,
    pub seed: Option<u64>,
    pub points: Vec<VerifyRowJson>,
    pub total: usize,
    pub failed: usize,
    pub summary: String,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn verify_json(family: Family, m: u32, seed: Option<u64>, checks: &[Check]) -> String {
    let points = checks
        .iter()
        .map(|c| VerifyRowJson {
            n: c.point.params.n(),
            b: c.point.params.b(),
            c: c.point.params.c(),
            x: q(&c.point.x),
            m,
            closed: q(&c.closed),
            oracle: q(&c.oracle),
            pass: c.pass,
        })
        .collect();
    json(&VerifyJson {
        subcommand: "verify",
        family: family.name(),
        m,
        seed,
        points,
        total: checks.len(),
        failed: checks.iter().filter(|c| !c.pass).count(),
        summary: summary(checks),
    })
}

pub fn verify_text(family: Family, m: u32, checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let p = &c.point.params;
        let _ = write!(
            out,
            "{} {family} n={} b={} c={} x={} m={m}",
            status(c.pass),
            p.n(),
            p.b(),
            p.c(),
            c.point.x
        );
        if !c.pass {
            let _ = write!(out, " closed={} oracle={}", c.closed, c.oracle);
        }
        out.push('\n');
    }
    out.push_str(&summary(checks));
    out.push('\n');
    out
}

pub fn verify_csv(family: Family, m: u32, checks: &[Check]) -> String {
    let mut out = format!("{VALUE_HEADER},oracle,status\n");
    for c in checks {
        let p = &c.point.params;
        let _ = writeln!(
            out,
            "{},{},{},{},{m},{family},{},{},{},{}",
            p.n(),
            p.b(),
            p.c(),
            c.point.x,
            c.closed,
            float(rbsum_core_to_f64(&c.closed)),
            c.oracle,
            status(c.pass)
        );
    }
    out
}

pub fn rbsum_core_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

#[derive(Debug, Serialize)]
pub struct StabilityRowJson {
    pub n: u32,
    pub b: u32,
    pub c: u32,
    pub x: String,
    pub m: u32,
    pub family: &'static str,
    pub exact: String,
    pub float: f64,
    pub float_direct: f64,
    pub float_compensated: f64,
    pub relerr_direct: f64,
    pub relerr_compensated: f64,
    pub relerr_closed: f64,
    pub condition: Option<String>,
    pub exact_zero: bool,
}

impl StabilityRowJson {
    pub fn new(family: Family, r: &StabilityReport) -> Self {
        StabilityRowJson {
            n: r.params.n(),
            b: r.params.b(),
            c: r.params.c(),
            x: q(&r.x),
            m: 0,
            family: family.name(),
            exact: q(&r.exact),
            float: r.float_closed,
            float_direct: r.float_direct,
            float_compensated: r.float_compensated,
            relerr_direct: r.relerr_direct,
            relerr_compensated: r.relerr_compensated,
            relerr_closed: r.relerr_closed,
            condition: r.condition.as_ref().map(q),
            exact_zero: r.exact_zero,
        }
    }

    fn fields(&self) -> [String; 11] {
        [
            self.n.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.x.clone(),
            self.m.to_string(),
            self.family.to_string(),
            self.exact.clone(),
            float(self.float),
            float(self.relerr_direct),
            float(self.relerr_closed),
            self.condition.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct StabilityJson {
    pub subcommand: &'static str,
    pub family: &'static str,
    pub rows: Vec<StabilityRowJson>,
}

pub fn stability_csv(rows: &[StabilityRowJson]) -> String {
    let mut out = format!("{STABILITY_HEADER}\n");
    for r in rows {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    out
}

pub fn stability_text(rows: &[StabilityRowJson]) -> String {
    let mut out = STABILITY_HEADER.replace(',', " ");
    out.push('\n');
    for r in rows {
        let mut fields = r.fields();
        if r.exact_zero {
            // relative error undefined; the columns hold absolute errors
            fields[10] = "exact-zero(abs-err)".to_string();
        }
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rbsum_core::exact::{frac, int};

    #[test]
    fn float_formatting_round_trips() {
        assert_eq!(float(1.0 / 6.0), "0.16666666666666666");
        assert_eq!(float(0.1), "0.1");
        for v in [1e-300, 3.7e34, -2.5e-17, 123456.789] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn series_json_shape() {
        let s = HypSeries::new(vec![int(-3), frac(5, 2)], vec![int(4), int(2)], int(1)).unwrap();
        let j = serde_json::to_string(&SeriesJson::new(&s, &frac(1, 2))).unwrap();
        assert_eq!(j, r#"{"upper":["-3","5/2"],"lower":["4","2"],"x":"1/2"}"#);
    }
}
