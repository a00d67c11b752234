//! Subcommand execution. Output is built in memory so the binary and the
//! tests share one code path.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::Parser;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rbsum_core::{beta_decomposition, stability_report, Rational, SumParams};

use crate::render::{self, DecompositionJson, EvalJson, LiftJson, StabilityRowJson, ValueRow};
use crate::request::{
    parse_config, Cli, CliCommand, CommandRequest, Family, Format, RequestError, Subcommand,
};
use crate::sweep::{attach_x, closed_value, grid, verify_all, Point};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn value_row(family: Family, p: &SumParams, x: &Rational, m: u32) -> ValueRow {
    let exact = closed_value(family, p, x, m);
    ValueRow {
        n: p.n(),
        b: p.b(),
        c: p.c(),
        x: render::q(x),
        m: if family.uses_m() { m } else { 0 },
        family: family.name(),
        float: to_f64(&exact),
        exact: render::q(&exact),
    }
}

fn sweep_points(req: &CommandRequest) -> Vec<Point> {
    let ranges = req.ranges.as_ref().expect("sweep requests carry ranges");
    attach_x(grid(ranges), req.family, &req.x, req.seed)
}

fn eval(req: &CommandRequest) -> String {
    let (n, b, c) = req.point.expect("eval requests carry a point");
    let p = SumParams::from_signed(n, b, c).expect("validated on resolve");
    let x = match req.family {
        Family::Frisch => Rational::from_integer(1.into()),
        _ => req.x.clone(),
    };
    let row = value_row(req.family, &p, &x, req.m);
    match req.output {
        Format::Text => render::eval_text(&row),
        Format::Csv => render::eval_csv(&row),
        Format::Json => {
            let d = beta_decomposition(&p);
            let lifted = (req.family == Family::Lifted).then(|| {
                let (l1, l2) = d.lifts(req.m);
                let mut v = vec![LiftJson::new(&l1, &x)];
                v.extend(l2.as_ref().map(|l| LiftJson::new(l, &x)));
                v
            });
            render::json(&EvalJson {
                subcommand: "eval",
                decomposition: Some(DecompositionJson::new(&d, &x)),
                lifted,
                row,
            })
        }
    }
}

fn verify(req: &CommandRequest) -> (i32, String) {
    let checks = verify_all(req.family, &sweep_points(req), req.m);
    let m = if req.family.uses_m() { req.m } else { 0 };
    let out = match req.output {
        Format::Text => render::verify_text(req.family, m, &checks),
        Format::Csv => render::verify_csv(req.family, m, &checks),
        Format::Json => render::verify_json(req.family, m, req.seed, &checks),
    };
    let status = if checks.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    (status, out)
}

fn table(req: &CommandRequest) -> String {
    let rows: Vec<ValueRow> = sweep_points(req)
        .par_iter()
        .map(|pt| value_row(req.family, &pt.params, &pt.x, req.m))
        .collect();
    match req.output {
        Format::Text => render::table_text(&rows),
        Format::Csv => render::table_csv(&rows),
        Format::Json => render::json(&render::TableJson {
            subcommand: "table",
            family: req.family.name(),
            rows,
        }),
    }
}

fn scan_stability(req: &CommandRequest) -> String {
    let rows: Vec<StabilityRowJson> = sweep_points(req)
        .par_iter()
        .map(|pt| StabilityRowJson::new(req.family, &stability_report(&pt.params, &pt.x)))
        .collect();
    match req.output {
        Format::Text => render::stability_text(&rows),
        Format::Csv => render::stability_csv(&rows),
        Format::Json => render::json(&render::StabilityJson {
            subcommand: "scan-stability",
            family: req.family.name(),
            rows,
        }),
    }
}

/// Runs a resolved request. Exit status 1 means a verification failure.
pub fn run_command(req: &CommandRequest) -> Outcome {
    let (status, stdout) = match req.subcommand {
        Subcommand::Eval => (EXIT_OK, eval(req)),
        Subcommand::Verify => verify(req),
        Subcommand::Table => (EXIT_OK, table(req)),
        Subcommand::ScanStability => (EXIT_OK, scan_stability(req)),
    };
    Outcome {
        status,
        stdout,
        stderr: String::new(),
    }
}

fn load_config(
    args: &crate::request::CommonArgs,
) -> Result<(BTreeMap<String, String>, String), RequestError> {
    match &args.config {
        None => Ok((BTreeMap::new(), "config".to_string())),
        Some(path) => {
            let origin = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| RequestError::Config {
                path: origin.clone(),
                message: e.to_string(),
            })?;
            Ok((parse_config(&text, &origin)?, origin))
        }
    }
}

/// Full command line to outcome. `env_output` is the value of
/// `RBSUM_OUTPUT`, passed in so callers control the environment.
pub fn run_cli<I, T>(args: I, env_output: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (subcommand, args) = match cli.command {
        CliCommand::Eval(a) => (Subcommand::Eval, a),
        CliCommand::Verify(a) => (Subcommand::Verify, a),
        CliCommand::Table(a) => (Subcommand::Table, a),
        CliCommand::ScanStability(a) => (Subcommand::ScanStability, a),
    };
    let resolved = load_config(&args).and_then(|(cfg, origin)| {
        CommandRequest::resolve(subcommand, args, &cfg, &origin, env_output)
    });
    match resolved {
        Ok(req) => run_command(&req),
        Err(e) => Outcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
