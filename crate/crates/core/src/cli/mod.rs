//! Command-line front end: `eval`, `sweep` and `selftest`.
//!
//! Exit codes: 0 ok, 1 malformed input, 2 not applicable, 3 divergent,
//! 4 self-test failure, 5 numerical failure.

mod eval;
mod render;
mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::oracle::QuadratureConfig;
use crate::weberschafheitlin::BetaConvention;

use eval::{arity, Family, Malformed, Mode, Record, RecordStatus, Request};
use render::Format;
use selftest::MAX_SELFTEST_LAMBDA;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_SELFTEST_FAILED: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

/// Largest number of grid points a sweep will evaluate.
pub const MAX_SWEEP_POINTS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "spherical-ws",
    version,
    about = "Closed-form integrals of spherical Bessel products, checked by quadrature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single integral.
    Eval(EvalArgs),
    /// Evaluate every point of an order range times a list of momenta.
    Sweep(SweepArgs),
    /// Run the built-in identity and consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum)]
    family: Family,
    /// Special-case formula tag, required with `--family special`.
    #[arg(long)]
    reduction: Option<String>,
    #[arg(long, value_enum, default_value = "analytic")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    orders: Vec<i64>,
    /// Comma-separated momenta.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    momenta: Vec<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    lambda_min: u32,
    #[arg(long)]
    lambda_max: u32,
    /// One comma-separated momentum set; repeat for a grid.
    #[arg(long, allow_negative_numbers = true)]
    momenta: Vec<String>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 50)]
    max_lambda: u32,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Fault {
    FlipBeta,
}

/// Runs the command line given by `args` (program name first) and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if informational {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_MALFORMED
            };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Malformed(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_MALFORMED
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NUMERIC
        }
    }
}

enum Failure {
    Malformed(String),
    Io(std::io::Error),
}

impl From<Malformed> for Failure {
    fn from(m: Malformed) -> Self {
        Failure::Malformed(m.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn orders_from(raw: &[i64]) -> Result<Vec<u32>, Malformed> {
    raw.iter()
        .map(|&o| {
            u32::try_from(o).map_err(|_| Malformed(format!("orders must be non-negative, got {o}")))
        })
        .collect()
}

fn cmd_eval(args: EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let c = &args.common;
    let request = Request::new(
        c.family,
        c.reduction.as_deref(),
        orders_from(&args.orders)?,
        args.momenta,
    )?;
    let config = QuadratureConfig::default();
    let record = eval::evaluate(request, c.mode, &config, BetaConvention::Indicator);
    render::single(out, &record, c.format)?;
    Ok(record.status.exit_code())
}

fn parse_momenta(text: &str) -> Result<Vec<f64>, Malformed> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Malformed(format!("invalid momentum '{s}'")))
        })
        .collect()
}

/// All order tuples in `[lo, hi]^n`, lexicographically.
fn order_grid(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if lo > hi {
        return Vec::new();
    }
    let mut grid = vec![Vec::new()];
    for _ in 0..n {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o);
                    next
                })
            })
            .collect();
    }
    grid
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let c = &args.common;
    let formula = eval::resolve_formula(c.family, c.reduction.as_deref())?;
    let (n_orders, _) = arity(formula);
    let mut momenta = args
        .momenta
        .iter()
        .map(|m| parse_momenta(m))
        .collect::<Result<Vec<_>, _>>()?;
    momenta.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(a.len().cmp(&b.len()))
    });
    momenta.dedup();
    let span = if args.lambda_min > args.lambda_max {
        0
    } else {
        (args.lambda_max - args.lambda_min) as usize + 1
    };
    let points = span
        .checked_pow(n_orders as u32)
        .and_then(|n| n.checked_mul(momenta.len()));
    match points {
        Some(n) if n <= MAX_SWEEP_POINTS => {}
        _ => {
            return Err(Failure::Malformed(format!(
                "grid too large: more than {MAX_SWEEP_POINTS} evaluations"
            )))
        }
    }
    let mut requests = Vec::new();
    for orders in order_grid(n_orders, args.lambda_min, args.lambda_max) {
        for k in &momenta {
            requests.push(Request::new(
                c.family,
                c.reduction.as_deref(),
                orders.clone(),
                k.clone(),
            )?);
        }
    }
    let config = QuadratureConfig::default();
    let mode = c.mode;
    let records: Vec<Record> = requests
        .into_par_iter()
        .map(|r| eval::evaluate(r, mode, &config, BetaConvention::Indicator))
        .collect();
    render::many(out, &records, c.format)?;
    let failed = records.iter().any(|r| r.status == RecordStatus::Failed);
    Ok(if failed { EXIT_NUMERIC } else { EXIT_OK })
}

fn cmd_selftest(args: SelftestArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.max_lambda > MAX_SELFTEST_LAMBDA {
        return Err(Failure::Malformed(format!(
            "--max-lambda must be at most {MAX_SELFTEST_LAMBDA}"
        )));
    }
    let convention = match args.inject_fault {
        Some(Fault::FlipBeta) => BetaConvention::Flipped,
        None => BetaConvention::Indicator,
    };
    let checks = selftest::run(args.max_lambda, convention);
    for check in &checks {
        writeln!(
            out,
            "{} {:<14} cases {:>5}  worst residual {:.3e}  tolerance {:.0e}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.cases,
            check.worst,
            check.tolerance
        )?;
    }
    let all = checks.iter().all(|c| c.passed);
    writeln!(
        out,
        "{}",
        if all {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )?;
    Ok(if all { EXIT_OK } else { EXIT_SELFTEST_FAILED })
}
