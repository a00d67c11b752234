//! Parsed and validated command requests.
//!
//! Resolution order for every field: command-line flag, then config file
//! (`key = value`, keys spelled like the long flags), then for the output
//! format only the `RBSUM_OUTPUT` environment variable, then the default.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand as ClapSubcommand, ValueEnum};
use rbsum_core::{parse_rational, ParamError, Rational};
use thiserror::Error;

pub const OUTPUT_ENV: &str = "RBSUM_OUTPUT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Frisch,
    Parametric,
    Weighted,
    Lifted,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Frisch => "frisch",
            Family::Parametric => "parametric",
            Family::Weighted => "weighted",
            Family::Lifted => "lifted",
        }
    }

    /// Whether the family depends on `m`.
    pub fn uses_m(self) -> bool {
        matches!(self, Family::Weighted | Family::Lifted)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Eval,
    Verify,
    Table,
    ScanStability,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Eval => "eval",
            Subcommand::Verify => "verify",
            Subcommand::Table => "table",
            Subcommand::ScanStability => "scan-stability",
        }
    }
}

#[derive(Debug, Error)]
pub enum RequestError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{0} requires {1}")]
    Missing(&'static str, &'static str),
    #[error("ranges are only valid for verify, table and scan-stability")]
    RangeOnSweepOnly,
    #[error("malformed range {0:?} (expected \"lo..hi\" with lo <= hi)")]
    MalformedRange(String),
    #[error("range {axis}-range {lo}..{hi} violates {constraint}")]
    RangeConstraint {
        axis: &'static str,
        lo: i64,
        hi: i64,
        constraint: &'static str,
    },
    #[error("scan-stability supports the frisch and parametric families, not {0}")]
    StabilityFamily(Family),
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error("invalid {key} {value:?} in {origin}")]
    BadValue {
        key: &'static str,
        value: String,
        origin: String,
    },
}

/// Inclusive integer range written `lo..hi`, `lo..=hi` or `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange(pub RangeInclusive<i64>);

impl FromStr for IntRange {
    type Err = RequestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RequestError::MalformedRange(s.to_string());
        let t = s.trim();
        let (lo, hi) = match t.split_once("..") {
            Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=').trim()),
            None => (t, t),
        };
        let lo: i64 = lo.parse().map_err(|_| bad())?;
        let hi: i64 = hi.parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(IntRange(lo..=hi))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rbsum",
    version,
    about = "Exact evaluation and verification of alternating reciprocal binomial sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, ClapSubcommand)]
pub enum CliCommand {
    /// Exact and binary64 value of one family at one point
    Eval(CommonArgs),
    /// Check closed forms against brute-force oracles over a grid
    Verify(CommonArgs),
    /// Grid of exact values
    Table(CommonArgs),
    /// Cancellation report for naive floating-point summation
    ScanStability(CommonArgs),
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Sum family [default: frisch]
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(short = 'n', allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub b: Option<i64>,
    #[arg(short = 'c', allow_negative_numbers = true)]
    pub c: Option<i64>,
    /// Rational argument "p/q" [default: 1]
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Weight / lift order [default: 0]
    #[arg(short = 'm')]
    pub m: Option<u32>,
    /// Inclusive range for n, e.g. 0..6
    #[arg(long = "n-range")]
    pub n_range: Option<String>,
    #[arg(long = "b-range")]
    pub b_range: Option<String>,
    #[arg(long = "c-range")]
    pub c_range: Option<String>,
    /// Output format [default: $RBSUM_OUTPUT, else text]
    #[arg(long, short = 'o', value_enum)]
    pub output: Option<Format>,
    /// Draw a random x per point from this seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Config file with `key = value` lines
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Grid axes of a sweep, inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranges {
    pub n: RangeInclusive<i64>,
    pub b: RangeInclusive<i64>,
    pub c: RangeInclusive<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandRequest {
    pub subcommand: Subcommand,
    pub family: Family,
    /// Single point, set for `eval`.
    pub point: Option<(i64, i64, i64)>,
    pub x: Rational,
    pub m: u32,
    /// Set for the sweep subcommands.
    pub ranges: Option<Ranges>,
    pub output: Format,
    pub seed: Option<u64>,
}

/// Parses a `key = value` config file. Blank lines and `#` comments are
/// ignored.
pub fn parse_config(text: &str, path: &str) -> Result<BTreeMap<String, String>, RequestError> {
    const KEYS: [&str; 11] = [
        "family", "n", "b", "c", "x", "m", "n-range", "b-range", "c-range", "output", "seed",
    ];
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| RequestError::Config {
            path: path.to_string(),
            message: format!("line {}: {message}", lineno + 1),
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(err(format!("unknown key {key:?}")));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

struct Layered<'a> {
    config: &'a BTreeMap<String, String>,
    origin: String,
}

impl Layered<'_> {
    fn pick<T: FromStr>(
        &self,
        key: &'static str,
        flag: Option<T>,
    ) -> Result<Option<T>, RequestError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| RequestError::BadValue {
                key,
                value: v.clone(),
                origin: self.origin.clone(),
            }),
        }
    }

    fn pick_enum<T: ValueEnum>(
        &self,
        key: &'static str,
        flag: Option<T>,
    ) -> Result<Option<T>, RequestError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => T::from_str(v, true)
                .map(Some)
                .map_err(|_| RequestError::BadValue {
                    key,
                    value: v.clone(),
                    origin: self.origin.clone(),
                }),
        }
    }
}

fn parse_env_format(value: Option<&str>) -> Result<Option<Format>, RequestError> {
    match value {
        None => Ok(None),
        Some(v) if v.trim().is_empty() => Ok(None),
        Some(v) => Format::from_str(v.trim(), true)
            .map(Some)
            .map_err(|_| RequestError::BadValue {
                key: "output",
                value: v.to_string(),
                origin: OUTPUT_ENV.to_string(),
            }),
    }
}

fn check_axis(
    axis: &'static str,
    range: &RangeInclusive<i64>,
    min: i64,
    constraint: &'static str,
) -> Result<(), RequestError> {
    if *range.start() < min {
        return Err(RequestError::RangeConstraint {
            axis,
            lo: *range.start(),
            hi: *range.end(),
            constraint,
        });
    }
    Ok(())
}

impl CommandRequest {
    /// Merges flags with an already-parsed config map and the output
    /// environment variable, then validates.
    pub fn resolve(
        subcommand: Subcommand,
        args: CommonArgs,
        config: &BTreeMap<String, String>,
        config_origin: &str,
        env_output: Option<&str>,
    ) -> Result<Self, RequestError> {
        let layer = Layered {
            config,
            origin: config_origin.to_string(),
        };
        let family = layer
            .pick_enum("family", args.family)?
            .unwrap_or(Family::Frisch);
        let n = layer.pick("n", args.n)?;
        let b = layer.pick("b", args.b)?;
        let c = layer.pick("c", args.c)?;
        let x_text: Option<String> = layer.pick("x", args.x)?;
        let m = layer.pick("m", args.m)?.unwrap_or(0);
        let n_range: Option<IntRange> = layer
            .pick("n-range", args.n_range)?
            .map(|s: String| s.parse())
            .transpose()?;
        let b_range: Option<IntRange> = layer
            .pick("b-range", args.b_range)?
            .map(|s: String| s.parse())
            .transpose()?;
        let c_range: Option<IntRange> = layer
            .pick("c-range", args.c_range)?
            .map(|s: String| s.parse())
            .transpose()?;
        let output = match layer.pick_enum("output", args.output)? {
            Some(f) => f,
            None => parse_env_format(env_output)?.unwrap_or(Format::Text),
        };
        let seed = layer.pick("seed", args.seed)?;
        let x = match x_text {
            Some(t) => parse_rational(&t)?,
            None => Rational::from_integer(1.into()),
        };

        let any_range = n_range.is_some() || b_range.is_some() || c_range.is_some();
        let name = subcommand.name();
        let (point, ranges) = match subcommand {
            Subcommand::Eval => {
                if any_range {
                    return Err(RequestError::RangeOnSweepOnly);
                }
                let n = n.ok_or(RequestError::Missing("eval", "-n"))?;
                let b = b.ok_or(RequestError::Missing("eval", "-b"))?;
                let c = c.ok_or(RequestError::Missing("eval", "-c"))?;
                rbsum_core::SumParams::from_signed(n, b, c)?;
                (Some((n, b, c)), None)
            }
            _ => {
                let axis = |range: Option<IntRange>, single: Option<i64>, flag: &'static str| {
                    range
                        .map(|r| r.0)
                        .or(single.map(|v| v..=v))
                        .ok_or(RequestError::Missing(name, flag))
                };
                let n = axis(n_range, n, "-n or --n-range")?;
                let b = axis(b_range, b, "-b or --b-range")?;
                let c = axis(c_range, c, "-c or --c-range")?;
                check_axis("n", &n, 0, "n >= 0")?;
                check_axis("c", &c, 1, "c > 0")?;
                check_axis("b", &b, 1, "b >= c > 0")?;
                (None, Some(Ranges { n, b, c }))
            }
        };
        if subcommand == Subcommand::ScanStability && family.uses_m() {
            return Err(RequestError::StabilityFamily(family));
        }
        Ok(CommandRequest {
            subcommand,
            family,
            point,
            x,
            m,
            ranges,
            output,
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(sub: Subcommand, args: CommonArgs) -> Result<CommandRequest, RequestError> {
        CommandRequest::resolve(sub, args, &BTreeMap::new(), "config", None)
    }

    #[test]
    fn range_syntax() {
        assert_eq!("0..6".parse::<IntRange>().unwrap(), IntRange(0..=6));
        assert_eq!("2..=4".parse::<IntRange>().unwrap(), IntRange(2..=4));
        assert_eq!(" 3 ".parse::<IntRange>().unwrap(), IntRange(3..=3));
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("a..b".parse::<IntRange>().is_err());
    }

    #[test]
    fn eval_requires_valid_point() {
        let args = CommonArgs {
            n: Some(1),
            b: Some(1),
            c: Some(2),
            ..Default::default()
        };
        let err = resolve(Subcommand::Eval, args).unwrap_err();
        assert!(err.to_string().contains("b >= c"));

        let args = CommonArgs {
            n: Some(1),
            b: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            resolve(Subcommand::Eval, args),
            Err(RequestError::Missing("eval", "-c"))
        ));
    }

    #[test]
    fn eval_rejects_ranges() {
        let args = CommonArgs {
            n: Some(1),
            b: Some(2),
            c: Some(1),
            n_range: Some("0..3".into()),
            ..Default::default()
        };
        assert!(matches!(
            resolve(Subcommand::Eval, args),
            Err(RequestError::RangeOnSweepOnly)
        ));
    }

    #[test]
    fn sweep_axis_falls_back_to_single_value() {
        let args = CommonArgs {
            n_range: Some("0..3".into()),
            b: Some(5),
            c_range: Some("1..2".into()),
            ..Default::default()
        };
        let req = resolve(Subcommand::Table, args).unwrap();
        assert_eq!(
            req.ranges,
            Some(Ranges {
                n: 0..=3,
                b: 5..=5,
                c: 1..=2
            })
        );
    }

    #[test]
    fn sweep_range_constraints() {
        let args = CommonArgs {
            n_range: Some("0..3".into()),
            b: Some(5),
            c_range: Some("0..2".into()),
            ..Default::default()
        };
        let err = resolve(Subcommand::Verify, args).unwrap_err();
        assert!(err.to_string().contains("c > 0"));
    }

    #[test]
    fn config_layering() {
        let cfg = parse_config(
            "# defaults\nfamily = lifted\nm = 2\noutput=csv\nn_range = 0..4\n",
            "f",
        )
        .unwrap();
        let args = CommonArgs {
            m: Some(3),
            b_range: Some("1..3".into()),
            c_range: Some("1..3".into()),
            ..Default::default()
        };
        let req =
            CommandRequest::resolve(Subcommand::Verify, args, &cfg, "f", Some("json")).unwrap();
        assert_eq!(req.family, Family::Lifted);
        assert_eq!(req.m, 3);
        assert_eq!(req.output, Format::Csv);
        assert_eq!(req.ranges.unwrap().n, 0..=4);
    }

    #[test]
    fn env_sets_default_format() {
        let args = CommonArgs {
            n: Some(0),
            b: Some(1),
            c: Some(1),
            ..Default::default()
        };
        let req =
            CommandRequest::resolve(Subcommand::Eval, args, &BTreeMap::new(), "-", Some("JSON"))
                .unwrap();
        assert_eq!(req.output, Format::Json);
        let args = CommonArgs {
            n: Some(0),
            b: Some(1),
            c: Some(1),
            ..Default::default()
        };
        assert!(CommandRequest::resolve(
            Subcommand::Eval,
            args,
            &BTreeMap::new(),
            "-",
            Some("yaml")
        )
        .is_err());
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(parse_config("colour = red", "f").is_err());
        assert!(parse_config("justtext", "f").is_err());
    }

    #[test]
    fn stability_family_restricted() {
        let args = CommonArgs {
            family: Some(Family::Weighted),
            n: Some(1),
            b: Some(2),
            c: Some(1),
            ..Default::default()
        };
        assert!(matches!(
            resolve(Subcommand::ScanStability, args),
            Err(RequestError::StabilityFamily(Family::Weighted))
        ));
    }
}
