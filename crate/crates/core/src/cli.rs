//! Command-line front end: verification suites, bound tables, convergence
//! sweeps, Fourier recovery and the eigen-oracle maximization.
//!
//! Every command produces one table. It goes to `--out` when given (written
//! to a temporary file next to the target and renamed into place) and to
//! stdout otherwise. Exit codes: 0 all checks pass, 1 a check or numerical
//! step failed, 2 the invocation was invalid.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Number, Value};

use crate::analysis::{self, PeriodicFunction};
use crate::error::Error;
use crate::functions;
use crate::inequality::{self, ORACLE_MAX_N};
use crate::spectral::CyclicBasis;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default `verify` tolerances.
pub const GRAM_TOL: f64 = 1e-12;
pub const ACTION_TOL: f64 = 1e-12;
pub const CANONICAL_TOL: f64 = 1e-11;
pub const SLACK_TOL: f64 = inequality::SLACK_TOL;
pub const ORACLE_TOL: f64 = 1e-10;

/// Default `fourier` tolerance on the largest coefficient discrepancy.
pub const FOURIER_TOL: f64 = 1e-3;

/// `maximize` thresholds.
pub const MAXIMIZE_TOL: f64 = 1e-10;
pub const SPAN_TOL: f64 = 1e-8;

/// Random vectors drawn per `n` by `verify`.
pub const SLACK_SAMPLES: usize = 256;
pub const CANONICAL_SAMPLES: usize = 16;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "wirtinger",
    version,
    about = "Discrete Wirtinger inequality toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the spectral and inequality checks over a range of n.
    Verify(VerifyArgs),
    /// Tabulate cos(2π/n) against the piecewise-linear bound.
    Bounds(BoundsArgs),
    /// Convergence table of sampled interpolant energies.
    Sweep(SweepArgs),
    /// Discrete against quadrature Fourier coefficients.
    Fourier(FourierArgs),
    /// Maximize the correlation with the dense eigensolver.
    Maximize(MaximizeArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// Named test function: sin1, cos1, sin2, mix13 or cubicodd.
    #[arg(long = "fn", value_name = "NAME")]
    name: Option<String>,
    /// Trigonometric polynomial coefficients a1,b1,a2,b2,...
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    harmonics: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Sizes: `8`, `4..64` (inclusive) or `5,7,31`.
    #[arg(long, default_value = "4..64", allow_hyphen_values = true)]
    n: String,
    /// Replace every check tolerance with this value.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, default_value = "4..100", allow_hyphen_values = true)]
    n: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value = "8,16,32,64,128", allow_hyphen_values = true)]
    n: String,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct FourierArgs {
    /// A single sample count.
    #[arg(long, default_value = "257", allow_hyphen_values = true)]
    n: String,
    #[arg(long, default_value_t = 4)]
    jmax: usize,
    /// Largest accepted |discrete - quadrature| coefficient error.
    #[arg(long, default_value_t = FOURIER_TOL)]
    tol: f64,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct MaximizeArgs {
    #[arg(long, default_value = "5", allow_hyphen_values = true)]
    n: String,
    /// Largest accepted |oracle - cos(2π/n)|.
    #[arg(long, default_value_t = MAXIMIZE_TOL)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses an `--n` value: an integer, an inclusive range `a..b`, or a
/// comma-separated list of either. The result is sorted and deduplicated.
pub fn parse_sizes(text: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(format!("empty entry in size list `{text}`"));
        }
        if let Some((lo, hi)) = item.split_once("..") {
            let lo = parse_size(lo)?;
            let hi = parse_size(hi.strip_prefix('=').unwrap_or(hi))?;
            if lo > hi {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(parse_size(item)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_size(s: &str) -> std::result::Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn sizes_at_least_4(text: &str) -> CliResult<Vec<usize>> {
    let ns = parse_sizes(text).map_err(CliError::Usage)?;
    if let Some(&n) = ns.iter().find(|&&n| n < 4) {
        return Err(CliError::Usage(format!(
            "n = {n} is below the minimum n = 4"
        )));
    }
    Ok(ns)
}

fn single_size(text: &str) -> CliResult<usize> {
    match sizes_at_least_4(text)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(CliError::Usage(format!(
            "expected a single n, got `{text}`"
        ))),
    }
}

fn positive_tolerance(tol: f64) -> CliResult<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

fn select_function(args: &FunctionArgs) -> CliResult<PeriodicFunction> {
    match (&args.name, &args.harmonics) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--fn and --harmonics are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --fn or --harmonics is required".into(),
        )),
        (Some(name), None) => functions::named(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown function `{name}` (known: {})",
                functions::NAMES.join(", ")
            ))
        }),
        (None, Some(list)) => {
            let coefficients = list
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("`{c}` is not a number")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            functions::harmonics(&coefficients).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(usize),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(v) => Value::String(v.clone()),
        }
    }
}

struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Csv => {
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let object: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| ((*k).to_owned(), v.json()))
                        .collect();
                    s.push_str(&Value::Object(object).to_string());
                    s.push('\n');
                }
            }
        }
        s
    }
}

/// A finished command: the table to emit and whether every check passed.
struct Outcome {
    table: Table,
    failures: Vec<String>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let (result, output) = match &cli.command {
        Command::Verify(a) => (cmd_verify(a), &a.output),
        Command::Bounds(a) => (cmd_bounds(a), &a.output),
        Command::Sweep(a) => (cmd_sweep(a), &a.output),
        Command::Fourier(a) => (cmd_fourier(a), &a.output),
        Command::Maximize(a) => (cmd_maximize(a), &a.output),
    };

    let outcome = match result.and_then(|o| emit(&o.table, output, out).map(|()| o)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Numerical(_) | CliError::Io(_) => EXIT_FAILURE,
            };
        }
    };
    if outcome.failures.is_empty() {
        EXIT_PASS
    } else {
        for f in &outcome.failures {
            let _ = writeln!(err, "FAIL {f}");
        }
        EXIT_FAILURE
    }
}

fn emit(table: &Table, output: &OutputArgs, out: &mut dyn Write) -> CliResult<()> {
    let text = table.render(output.format);
    match &output.out {
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("writing to stdout: {e}"))),
        Some(path) => write_atomically(path, text.as_bytes()),
    }
}

fn write_atomically(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !dir.is_dir() {
        return Err(CliError::Usage(format!(
            "output directory `{}` does not exist",
            dir.display()
        )));
    }
    let io_err = |e: io::Error| CliError::Io(format!("writing `{}`: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// A generator for one check at one `n`, independent of the rest of the range.
fn check_rng(seed: u64, n: usize, check: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((n as u64) << 8 | check);
    rng
}

struct CheckAccumulator {
    name: &'static str,
    tolerance: f64,
    n_min: usize,
    n_max: usize,
    worst: f64,
    worst_n: usize,
    seen: bool,
}

impl CheckAccumulator {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            n_min: usize::MAX,
            n_max: 0,
            worst: 0.0,
            worst_n: 0,
            seen: false,
        }
    }

    fn record(&mut self, n: usize, residual: f64) {
        self.n_min = self.n_min.min(n);
        self.n_max = self.n_max.max(n);
        // NaN counts as the worst possible residual.
        if residual.is_nan() || (!self.worst.is_nan() && (!self.seen || residual > self.worst)) {
            self.worst = residual;
            self.worst_n = n;
        }
        self.seen = true;
    }

    fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let ns = sizes_at_least_4(&args.n)?;
    let over = match args.tol {
        Some(t) => Some(positive_tolerance(t)?),
        None => None,
    };
    let tol = |default: f64| over.unwrap_or(default);

    let mut gram = CheckAccumulator::new("gram", tol(GRAM_TOL));
    let mut action = CheckAccumulator::new("action", tol(ACTION_TOL));
    let mut canonical = CheckAccumulator::new("canonical", tol(CANONICAL_TOL));
    let mut slack = CheckAccumulator::new("slack", tol(SLACK_TOL));
    let mut oracle = CheckAccumulator::new("oracle", tol(ORACLE_TOL));

    for &n in &ns {
        let basis = CyclicBasis::new(n)?;
        gram.record(n, basis.gram_residual());
        action.record(n, basis.verify_action().residual);

        let mut rng = check_rng(args.seed, n, 0);
        canonical.record(
            n,
            inequality::canonical_form_residual(n, CANONICAL_SAMPLES, &mut rng)?,
        );

        let mut rng = check_rng(args.seed, n, 1);
        let mut violation = 0.0f64;
        for _ in 0..SLACK_SAMPLES {
            let x = inequality::random_conforming(n, &mut rng)?;
            violation = violation.max(-inequality::check_inequality(&x)?.slack);
        }
        slack.record(n, violation);

        if n <= ORACLE_MAX_N {
            let value = inequality::oracle_max(n)?.value;
            oracle.record(n, (value - inequality::discrete_bound(n)?).abs());
        }
    }

    let mut table = Table::new(&[
        "check",
        "n_min",
        "n_max",
        "max_residual",
        "tolerance",
        "pass",
    ]);
    let mut failures = Vec::new();
    for check in [&gram, &action, &canonical, &slack, &oracle] {
        if !check.seen {
            continue;
        }
        let pass = check.passed();
        if !pass {
            failures.push(format!(
                "{}: residual {:e} at n = {} exceeds {:e}",
                check.name, check.worst, check.worst_n, check.tolerance
            ));
        }
        table.push(vec![
            Cell::Text(check.name.into()),
            Cell::Int(check.n_min),
            Cell::Int(check.n_max),
            Cell::Float(check.worst),
            Cell::Float(check.tolerance),
            Cell::Bool(pass),
        ]);
    }
    Ok(Outcome { table, failures })
}

fn cmd_bounds(args: &BoundsArgs) -> CliResult<Outcome> {
    let ns = sizes_at_least_4(&args.n)?;
    let mut table = Table::new(&["n", "cos_bound", "piecewise_bound", "margin"]);
    let mut failures = Vec::new();
    for n in ns {
        let c = inequality::bound_comparison(n)?;
        let positive = c.margin > 0.0;
        if !positive {
            failures.push(format!(
                "bounds: margin {:e} at n = {n} is not positive",
                c.margin
            ));
        }
        table.push(vec![
            Cell::Int(n),
            Cell::Float(c.lhs),
            Cell::Float(c.rhs),
            Cell::Float(c.margin),
        ]);
    }
    Ok(Outcome { table, failures })
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<Outcome> {
    let f = select_function(&args.function)?;
    let ns = sizes_at_least_4(&args.n)?;
    let report = analysis::rayleigh_sweep(&f, &ns)?;
    let mut table = Table::new(&[
        "n",
        "mean",
        "energy_l2",
        "energy_h1",
        "slack",
        "tail_energy",
        "elapsed_ms",
    ]);
    for row in &report.rows {
        table.push(vec![
            Cell::Int(row.n),
            Cell::Float(row.mean),
            Cell::Float(row.energy_l2),
            Cell::Float(row.energy_h1),
            Cell::Float(row.slack),
            Cell::Float(row.tail_energy),
            Cell::Text(format!("{:.3}", row.elapsed.as_secs_f64() * 1e3)),
        ]);
    }
    Ok(Outcome {
        table,
        failures: Vec::new(),
    })
}

fn cmd_fourier(args: &FourierArgs) -> CliResult<Outcome> {
    let f = select_function(&args.function)?;
    let n = single_size(&args.n)?;
    let tol = positive_tolerance(args.tol)?;
    if args.jmax == 0 {
        return Err(CliError::Usage("--jmax must be at least 1".into()));
    }
    if n < 2 * args.jmax + 2 {
        return Err(CliError::Usage(format!(
            "aliasing guard: n = {n} must be at least 2*jmax + 2 = {}",
            2 * args.jmax + 2
        )));
    }
    let discrete = analysis::fourier_discrete(&f, n, args.jmax)?;
    let quad = analysis::fourier_quadrature(&f, args.jmax)?;
    let mut table = Table::new(&[
        "j",
        "a_discrete",
        "b_discrete",
        "a_quad",
        "b_quad",
        "abs_err_a",
        "abs_err_b",
    ]);
    let mut worst = (0.0f64, 0usize);
    for (d, q) in discrete.coefficients.iter().zip(&quad.coefficients) {
        let (ea, eb) = ((d.a - q.a).abs(), (d.b - q.b).abs());
        let e = ea.max(eb);
        if e > worst.0 || e.is_nan() {
            worst = (e, d.j);
        }
        table.push(vec![
            Cell::Int(d.j),
            Cell::Float(d.a),
            Cell::Float(d.b),
            Cell::Float(q.a),
            Cell::Float(q.b),
            Cell::Float(ea),
            Cell::Float(eb),
        ]);
    }
    let mut failures = Vec::new();
    let within = worst.0 <= tol;
    if !within {
        failures.push(format!(
            "fourier: coefficient error {:e} at j = {} exceeds {tol:e}",
            worst.0, worst.1
        ));
    }
    Ok(Outcome { table, failures })
}

fn cmd_maximize(args: &MaximizeArgs) -> CliResult<Outcome> {
    let ns = sizes_at_least_4(&args.n)?;
    if let Some(&n) = ns.iter().find(|&&n| n > ORACLE_MAX_N) {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the eigen-oracle cap n = {ORACLE_MAX_N}"
        )));
    }
    let tol = positive_tolerance(args.tol)?;
    let mut table = Table::new(&[
        "n",
        "oracle_value",
        "discrete_bound",
        "difference",
        "span_residual",
    ]);
    let mut failures = Vec::new();
    for n in ns {
        let max = inequality::oracle_max(n)?;
        let bound = inequality::discrete_bound(n)?;
        let difference = max.value - bound;
        let residual = inequality::extremal_span_residual(&max.argmax)?;
        let (agrees, in_span) = (difference.abs() <= tol, residual <= SPAN_TOL);
        if !agrees {
            failures.push(format!(
                "maximize: |oracle - bound| = {:e} at n = {n} exceeds {tol:e}",
                difference.abs()
            ));
        }
        if !in_span {
            failures.push(format!(
                "maximize: span residual {residual:e} at n = {n} exceeds {SPAN_TOL:e}"
            ));
        }
        table.push(vec![
            Cell::Int(n),
            Cell::Float(max.value),
            Cell::Float(bound),
            Cell::Float(difference),
            Cell::Float(residual),
        ]);
    }
    Ok(Outcome { table, failures })
}
