//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 invalid arguments,
//! 3 empty result.

pub mod output;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::hydrogen::{self, PhysicalParams, QuantumState};
use crate::observables::{self as obs, UNDEFINED_MARKER};
use crate::validate::{self, Verdict};
use output::{format_sig, Cell, Format, OutputSpec, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_INVALID_ARGS: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;

/// (n, l) pairs swept over `d` when none are given.
pub const DEFAULT_SWEEP_STATES: [(u32, u32); 4] = [(1, 0), (2, 0), (2, 1), (3, 0)];

#[derive(Debug, Parser)]
#[command(name = "hydrodim", version, about = "Radial observables of the d-dimensional hydrogenic atom")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form observables for one state.
    Report(ReportArgs),
    /// One row per state per observable while varying d, n or l.
    Sweep(SweepArgs),
    /// Tabulate r, R(r), P(r) on a uniform grid.
    Wavefunction(WavefunctionArgs),
    /// Compare every closed form with the quadrature oracle over a grid of states.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long = "out", value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Significant digits.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(4..=17))]
    pub precision: u8,
}

impl OutputArgs {
    fn spec(&self, default: Format) -> OutputSpec {
        OutputSpec {
            format: self.format.unwrap_or(default),
            destination: self.out.clone(),
            precision: self.precision as usize,
        }
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(short = 'n', allow_negative_numbers = true)]
    pub n: i64,
    #[arg(short = 'l', allow_negative_numbers = true)]
    pub l: i64,
    #[arg(short = 'd', allow_negative_numbers = true)]
    pub d: i64,
    /// Nuclear charge.
    #[arg(short = 'Z', default_value_t = 1.0)]
    pub z: f64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vary {
    D,
    N,
    L,
}

/// Inclusive integer range written `MIN..MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub min: i64,
    pub max: i64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("range must look like MIN..MAX, got '{s}'"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| format!("range bound '{v}' is not an integer"))
        };
        Ok(IntRange { min: parse(lo)?, max: parse(hi)? })
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Vary::D)]
    pub vary: Vary,
    /// Inclusive range of the varied quantum number, e.g. 2..20.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<IntRange>,
    #[arg(short = 'n', allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(short = 'l', allow_negative_numbers = true)]
    pub l: Option<i64>,
    #[arg(short = 'd', allow_negative_numbers = true)]
    pub d: Option<i64>,
    #[arg(short = 'Z', default_value_t = 1.0)]
    pub z: f64,
    /// Comma-separated observables (see `report` for names).
    #[arg(long, value_delimiter = ',', default_value = "expect_r")]
    pub observables: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Upper end of the grid; defaults to 10 <r>.
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, default_value_t = hydrogen::DEFAULT_GRID_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Largest principal quantum number.
    #[arg(short = 'n', default_value_t = validate::DEFAULT_N_MAX)]
    pub n_max: u32,
    /// Dimension range, inclusive.
    #[arg(long, default_value = "2..12")]
    pub range: IntRange,
    #[arg(long, default_value_t = validate::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(short = 'Z', default_value_t = 1.0)]
    pub z: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure of a subcommand, mapped onto the exit code.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Empty(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID_ARGS,
            CliError::Empty(_) => EXIT_EMPTY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Empty(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(format!("cannot write output: {e}"))
    }
}

/// Runs a parsed command and returns the process exit code. Diagnostics go
/// to standard error as a single line.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Report(args) => cmd_report(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Wavefunction(args) => cmd_wavefunction(&args),
        Command::Validate(args) => cmd_validate(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn params(z: f64) -> Result<PhysicalParams, CliError> {
    Ok(PhysicalParams::natural(z)?)
}

fn emit(table: &Table, spec: &OutputSpec) -> Result<(), CliError> {
    let mut out = spec.open()?;
    table.write(spec.format, spec.precision, &mut *out)?;
    out.flush()?;
    Ok(())
}

/// Names accepted by `sweep --observables`, in report order.
pub const OBSERVABLE_NAMES: [&str; 12] = [
    "expect_r",
    "expect_r2",
    "expect_inv_r",
    "expect_inv_r2",
    "expect_pr",
    "expect_pr2",
    "delta_r",
    "delta_pr",
    "sigma_r",
    "product",
    "energy",
    "expect_v",
];

fn unit_of(name: &str) -> &'static str {
    match name {
        "expect_r" | "delta_r" => "a0",
        "expect_r2" => "a0^2",
        "expect_inv_r" => "1/a0",
        "expect_inv_r2" => "1/a0^2",
        "expect_pr" | "delta_pr" => "hbar/a0",
        "expect_pr2" => "hbar^2/a0^2",
        "sigma_r" => "1",
        "product" => "hbar",
        "energy" | "expect_v" => "hbar^2/(mu a0^2)",
        _ => "",
    }
}

fn value_cell(v: Option<f64>) -> Cell {
    v.map_or_else(|| Cell::from(UNDEFINED_MARKER), Cell::Num)
}

pub fn cmd_report(args: &ReportArgs) -> Result<i32, CliError> {
    let s = &args.state;
    let state = QuantumState::from_signed(s.n, s.l, s.d)?;
    let params = params(s.z)?;
    let report = obs::full_report(state, params);
    let mut table = Table::new(params, &["quantity", "value", "unit"]);
    table.push(vec!["n".into(), state.n().into(), "".into()]);
    table.push(vec!["l".into(), state.l().into(), "".into()]);
    table.push(vec!["d".into(), state.d().into(), "".into()]);
    for (name, value) in report.entries() {
        table.push(vec![name.into(), value_cell(value), unit_of(name).into()]);
    }
    emit(&table, &args.output.spec(Format::Table))?;
    Ok(EXIT_OK)
}

fn observable_value(report: &obs::ObservableReport, name: &str) -> Option<f64> {
    report
        .entries()
        .into_iter()
        .find(|(n, _)| *n == name)
        .and_then(|(_, v)| v)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let params = params(args.z)?;
    for name in &args.observables {
        if !OBSERVABLE_NAMES.contains(&name.as_str()) {
            return Err(CliError::Invalid(format!(
                "unknown observable '{name}'; expected one of {}",
                OBSERVABLE_NAMES.join(",")
            )));
        }
    }

    let range = match (args.range, args.vary) {
        (Some(r), _) => r,
        (None, Vary::D) => IntRange { min: 2, max: 20 },
        (None, Vary::N) => IntRange { min: 1, max: 5 },
        (None, Vary::L) => IntRange { min: 0, max: args.n.unwrap_or(3) - 1 },
    };
    if range.min > range.max {
        return Err(CliError::Invalid(format!(
            "range must satisfy MIN <= MAX, got {}..{}",
            range.min, range.max
        )));
    }

    // (n, l, d) candidates, in output order
    let mut candidates: Vec<(i64, i64, i64)> = Vec::new();
    match args.vary {
        Vary::D => {
            let pairs: Vec<(i64, i64)> = match (args.n, args.l) {
                (None, None) => DEFAULT_SWEEP_STATES
                    .iter()
                    .map(|&(n, l)| (n as i64, l as i64))
                    .collect(),
                (n, l) => vec![(n.unwrap_or(1), l.unwrap_or(0))],
            };
            for (n, l) in pairs {
                for d in range.min..=range.max {
                    candidates.push((n, l, d));
                }
            }
        }
        Vary::N => {
            let (l, d) = (args.l.unwrap_or(0), args.d.unwrap_or(3));
            for n in range.min..=range.max {
                candidates.push((n, l, d));
            }
        }
        Vary::L => {
            let (n, d) = (args.n.unwrap_or(3), args.d.unwrap_or(3));
            for l in range.min..=range.max {
                candidates.push((n, l, d));
            }
        }
    }

    let mut table = Table::new(params, &["n", "l", "d", "observable", "value"]);
    let mut valid = 0usize;
    for (n, l, d) in candidates {
        match QuantumState::from_signed(n, l, d) {
            Ok(state) => {
                valid += 1;
                let report = obs::full_report(state, params);
                for name in &args.observables {
                    table.push(vec![
                        Cell::Int(n),
                        Cell::Int(l),
                        Cell::Int(d),
                        name.as_str().into(),
                        value_cell(observable_value(&report, name)),
                    ]);
                }
            }
            Err(e) => {
                for name in &args.observables {
                    table.push(vec![
                        Cell::Int(n),
                        Cell::Int(l),
                        Cell::Int(d),
                        name.as_str().into(),
                        format!("skipped: {e}").into(),
                    ]);
                }
            }
        }
    }
    if valid == 0 {
        return Err(CliError::Empty("no valid state in the requested range".into()));
    }
    emit(&table, &args.output.spec(Format::Csv))?;
    Ok(EXIT_OK)
}

pub fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<i32, CliError> {
    let s = &args.state;
    let state = QuantumState::from_signed(s.n, s.l, s.d)?;
    let params = params(s.z)?;
    let r_max = args
        .rmax
        .unwrap_or_else(|| hydrogen::DEFAULT_GRID_EXTENT * obs::expect_r(state, params));
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(CliError::Invalid("rmax must be > 0".into()));
    }
    if args.points < 2 {
        return Err(CliError::Invalid("points must be >= 2".into()));
    }
    let wf = hydrogen::wavefunction(state, params);
    let mut table = Table::new(params, &["r", "R", "P"]);
    for (r, value, density) in wf.tabulate(r_max, args.points) {
        table.push(vec![r.into(), value.into(), density.into()]);
    }
    emit(&table, &args.output.spec(Format::Csv))?;
    Ok(EXIT_OK)
}

fn opt(v: Option<f64>) -> Cell {
    v.map_or_else(|| Cell::from(""), Cell::Num)
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<i32, CliError> {
    let params = params(args.z)?;
    let to_u32 = |v: i64, what: &str| {
        u32::try_from(v).map_err(|_| CliError::Invalid(format!("{what} out of range: {v}")))
    };
    let d_min = to_u32(args.range.min, "d_min")?;
    let d_max = to_u32(args.range.max, "d_max")?;
    let report = validate::sweep_validate(args.n_max, d_min, d_max, params, args.tolerance)?;
    let summary = &report.summary;
    let spec = args.output.spec(Format::Table);

    let summary_line = format!(
        "summary: states={} passed={} failed={} skipped={} worst_rel_error={}{}",
        summary.states,
        summary.passed,
        summary.failed,
        summary.skipped,
        format_sig(summary.worst_rel_error, spec.precision),
        summary
            .worst
            .as_ref()
            .map(|w| format!(" worst={} {}", w.state, w.kind.name()))
            .unwrap_or_default()
    );

    if spec.format == Format::Json {
        let mut out = spec.open()?;
        serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
        writeln!(out)?;
        out.flush()?;
    } else {
        let mut table = Table::new(
            params,
            &[
                "n", "l", "d", "kind", "closed_form", "oracle", "alt_route", "rel_error",
                "alt_rel_error", "verdict", "tolerance",
            ],
        );
        for r in &report.records {
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Skipped => "skipped: excluded domain",
            };
            table.push(vec![
                r.state.n().into(),
                r.state.l().into(),
                r.state.d().into(),
                r.kind.name().into(),
                opt(r.closed_form),
                opt(r.oracle),
                opt(r.alt_route),
                opt(r.rel_error),
                opt(r.alt_rel_error),
                verdict.into(),
                r.tolerance.into(),
            ]);
        }
        table.footer.push(summary_line.clone());
        emit(&table, &spec)?;
    }
    eprintln!("{summary_line}");
    Ok(if summary.failed == 0 { EXIT_OK } else { EXIT_VALIDATION_FAILED })
}
