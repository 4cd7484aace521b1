//! Command-line harness: exact counts, asymptotic estimates and
//! exact-vs-asymptotic tables.
//!
//! Output is deterministic for a given configuration: rows come out in
//! ascending (k, n) order, floats use Rust's locale-free formatting, and
//! lines end in `\n`.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{
    density_bosonic, density_finite_k, density_full, AsymptoticError, DensityEstimate, Formula,
    StatWeight,
};
use crate::exact::{count_table, BigCount, CountTable, Multiplicity};
use crate::selftest::SelfTest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SELFTEST: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Asymptotic(#[from] AsymptoticError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("selftest failed: {0}")]
    SelftestFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SelftestFailed(_) => EXIT_SELFTEST,
            _ => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "gentile",
    version,
    about = "Restricted partition counts p_k^s(n) and their saddle-point asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact p_k^s(n) for one n or a range of n
    Count(CountArgs),
    /// Asymptotic density estimate at E = n
    Asymptotic(AsymptoticArgs),
    /// Exact counts next to one asymptotic estimate
    Compare(CompareArgs),
    /// Exact vs asymptotic for several k at once (long format)
    Sweep(SweepArgs),
    /// Run the oracle-equivalence and identity suites
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Power of the parts (integer for exact counts)
    #[arg(long)]
    pub s: f64,
    /// n as a single value or an inclusive range start..end[..step]
    #[arg(long)]
    pub n: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write to a file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    /// Multiplicity cap: a positive integer or "inf"
    #[arg(long)]
    pub k: Multiplicity,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub k: Multiplicity,
    #[arg(long, value_enum, default_value_t = Estimator::Auto)]
    pub formula: Estimator,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub k: Multiplicity,
    #[arg(long, value_enum, default_value_t = Estimator::Auto)]
    pub formula: Estimator,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated caps, e.g. 1,2,4,inf
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<Multiplicity>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Extend the s = 1 oracle checks to n <= 2000
    #[arg(long)]
    pub deep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

/// Which asymptotic density to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Estimator {
    /// Full Gentile form (finite k)
    Eq20,
    /// Large-E finite-k form
    Eq21,
    /// Unbounded-k (Hardy–Ramanujan) form
    Eq23,
    /// eq21 for finite k, eq23 for k = inf
    Auto,
}

impl Estimator {
    pub fn resolve(self, k: Multiplicity) -> Result<Formula, CliError> {
        match (self, k) {
            (Estimator::Auto, Multiplicity::Unbounded)
            | (Estimator::Eq23, Multiplicity::Unbounded) => Ok(Formula::Bosonic),
            (Estimator::Auto, _) | (Estimator::Eq21, Multiplicity::AtMost(_)) => {
                Ok(Formula::FiniteK)
            }
            (Estimator::Eq20, Multiplicity::AtMost(_)) => Ok(Formula::FullGentile),
            (Estimator::Eq20 | Estimator::Eq21, Multiplicity::Unbounded) => Err(usage(
                "eq20/eq21 need a finite k; use --formula eq23 (or auto) for k = inf",
            )),
            (Estimator::Eq23, Multiplicity::AtMost(_)) => Err(usage(
                "eq23 is the k = inf formula; use eq20 or eq21 for finite k",
            )),
        }
    }
}

/// Inclusive range of n with a positive step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl NRange {
    pub fn single(n: u64) -> Self {
        Self {
            start: n,
            end: n,
            step: 1,
        }
    }

    pub fn is_single(&self) -> bool {
        self.start == self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        (self.start..=self.end).step_by(self.step as usize)
    }
}

impl FromStr for NRange {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let parse = |t: &str| {
            t.trim().parse::<u64>().map_err(|_| {
                usage(format!(
                    "invalid n {text:?}: expected N or START..END[..STEP]"
                ))
            })
        };
        let pieces: Vec<&str> = text.split("..").collect();
        let range = match pieces.as_slice() {
            [n] => NRange::single(parse(n)?),
            [a, b] => NRange {
                start: parse(a)?,
                end: parse(b)?,
                step: 1,
            },
            [a, b, c] => NRange {
                start: parse(a)?,
                end: parse(b)?,
                step: parse(c)?,
            },
            _ => return Err(usage(format!("invalid n range {text:?}"))),
        };
        if range.step == 0 {
            return Err(usage("range step must be at least 1"));
        }
        if range.start > range.end {
            return Err(usage(format!("empty range {text:?}: start exceeds end")));
        }
        Ok(range)
    }
}

fn integer_power(s: f64) -> Result<u32, CliError> {
    if s.is_finite() && s >= 1.0 && s.fract() == 0.0 && s <= u32::MAX as f64 {
        Ok(s as u32)
    } else {
        Err(usage(format!(
            "exact counts need an integer power s >= 1 (got {s}); asymptotic accepts real s"
        )))
    }
}

fn require_positive_start(range: &NRange) -> Result<(), CliError> {
    if range.start == 0 {
        Err(usage("asymptotic estimates need n >= 1"))
    } else {
        Ok(())
    }
}

fn to_index(n: u64) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| usage(format!("n = {n} is too large")))
}

/// Real estimate in scientific notation with 10 significant digits.
pub fn format_estimate(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.9e}")
    } else {
        v.to_string()
    }
}

pub fn format_rel_err(v: Option<f64>) -> String {
    v.map(|r| format!("{r:.6}")).unwrap_or_default()
}

/// Relative error est/exact − 1, undefined when nothing is representable.
pub fn relative_error(estimate: f64, exact: &BigCount) -> Option<f64> {
    (!exact.is_zero()).then(|| estimate / exact.to_f64() - 1.0)
}

pub fn estimate(
    s: f64,
    k: Multiplicity,
    formula: Formula,
    n: f64,
) -> Result<DensityEstimate, CliError> {
    let w = StatWeight::new(s, k)?;
    Ok(match formula {
        Formula::FullGentile => density_full(w, n)?,
        Formula::FiniteK => density_finite_k(w, n)?,
        Formula::Bosonic => density_bosonic(s, n)?,
        Formula::ClosedFormDistinct | Formula::ClosedFormHR => {
            unreachable!("closed forms are not selectable from the command line")
        }
    })
}

/// One n of an exact-vs-asymptotic comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub k: Multiplicity,
    pub n: u64,
    pub exact: BigCount,
    /// Eq. 21 form for finite k, the bosonic form for k = inf.
    pub est_finite_k: f64,
    /// Full Gentile form; finite k only.
    pub est_full: Option<f64>,
    /// The estimate selected for this run and its formula.
    pub estimate: f64,
    pub formula: Formula,
    pub rel_err: Option<f64>,
}

/// Rows for one (s, k) over `range`, reusing a single count table.
pub fn comparison_rows(
    s: u32,
    k: Multiplicity,
    range: NRange,
    chosen: Estimator,
) -> Result<Vec<ComparisonRow>, CliError> {
    require_positive_start(&range)?;
    let formula = chosen.resolve(k)?;
    let default = Estimator::Auto.resolve(k)?;
    let table = count_table(s, k, to_index(range.end)?);
    let sf = s as f64;
    range
        .iter()
        .map(|n| {
            let e = n as f64;
            let est_finite_k = estimate(sf, k, default, e)?.value;
            let est_full = match k {
                Multiplicity::AtMost(_) => Some(estimate(sf, k, Formula::FullGentile, e)?.value),
                Multiplicity::Unbounded => None,
            };
            let value = match formula {
                Formula::FullGentile => est_full.expect("finite k"),
                _ => est_finite_k,
            };
            let exact = table[n as usize].clone();
            Ok(ComparisonRow {
                k,
                n,
                rel_err: relative_error(value, &exact),
                exact,
                est_finite_k,
                est_full,
                estimate: value,
                formula,
            })
        })
        .collect()
}

/// Rows for every k in `ks`, ordered by the position of k in `ks` then n.
pub fn sweep_rows(
    s: u32,
    ks: &[Multiplicity],
    range: NRange,
) -> Result<Vec<ComparisonRow>, CliError> {
    if ks.is_empty() {
        return Err(usage("sweep needs at least one k"));
    }
    let per_k: Vec<Result<Vec<ComparisonRow>, CliError>> = ks
        .par_iter()
        .map(|&k| comparison_rows(s, k, range, Estimator::Auto))
        .collect();
    let mut rows = Vec::new();
    for r in per_k {
        rows.extend(r?);
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CountJson<'a> {
    n: u64,
    exact: &'a BigCount,
}

#[derive(Serialize)]
struct EstimateJson {
    n: f64,
    estimate: f64,
    formula: &'static str,
}

#[derive(Serialize)]
struct CompareJson<'a> {
    n: u64,
    exact: &'a BigCount,
    estimate: f64,
    rel_err: Option<f64>,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    k: Multiplicity,
    n: u64,
    exact: &'a BigCount,
    est_eq21: f64,
    est_eq20: Option<f64>,
    rel_err: Option<f64>,
}

fn render(format: OutputFormat, header: &[&str], rows: &[Vec<String>], json: String) -> String {
    match format {
        OutputFormat::Json => json + "\n",
        OutputFormat::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = String::new();
            let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
                let parts: Vec<String> = cells
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                out.push_str(parts.join("  ").trim_end());
                out.push('\n');
            };
            line(&mut out, &mut header.iter().copied());
            for row in rows {
                line(&mut out, &mut row.iter().map(String::as_str));
            }
            out
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("rows serialize")
}

pub fn render_comparison(rows: &[ComparisonRow], format: OutputFormat) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.exact.to_string(),
                format_estimate(r.estimate),
                format_rel_err(r.rel_err),
            ]
        })
        .collect();
    let json: Vec<CompareJson> = rows
        .iter()
        .map(|r| CompareJson {
            n: r.n,
            exact: &r.exact,
            estimate: r.estimate,
            rel_err: r.rel_err,
        })
        .collect();
    render(
        format,
        &["n", "exact", "estimate", "rel_err"],
        &cells,
        to_json(&json),
    )
}

pub fn render_sweep(rows: &[ComparisonRow], format: OutputFormat) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.n.to_string(),
                r.exact.to_string(),
                format_estimate(r.est_finite_k),
                r.est_full.map(format_estimate).unwrap_or_default(),
                format_rel_err(r.rel_err),
            ]
        })
        .collect();
    let json: Vec<SweepJson> = rows
        .iter()
        .map(|r| SweepJson {
            k: r.k,
            n: r.n,
            exact: &r.exact,
            est_eq21: r.est_finite_k,
            est_eq20: r.est_full,
            rel_err: r.rel_err,
        })
        .collect();
    render(
        format,
        &["k", "n", "exact", "est_eq21", "est_eq20", "rel_err"],
        &cells,
        to_json(&json),
    )
}

fn cmd_count(args: &CountArgs) -> Result<String, CliError> {
    let s = integer_power(args.common.s)?;
    let range: NRange = args.common.n.parse()?;
    let table: CountTable = count_table(s, args.k, to_index(range.end)?);
    if range.is_single() {
        return Ok(format!("{}\n", table[range.end as usize]));
    }
    let rows: Vec<(u64, &BigCount)> = range.iter().map(|n| (n, &table[n as usize])).collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(n, c)| vec![n.to_string(), c.to_string()])
        .collect();
    let json: Vec<CountJson> = rows
        .iter()
        .map(|&(n, exact)| CountJson { n, exact })
        .collect();
    Ok(render(
        args.common.format,
        &["n", "exact"],
        &cells,
        to_json(&json),
    ))
}

fn cmd_asymptotic(args: &AsymptoticArgs) -> Result<String, CliError> {
    let formula = args.formula.resolve(args.k)?;
    let points: Vec<f64> = if args.common.n.contains("..") {
        let range: NRange = args.common.n.parse()?;
        require_positive_start(&range)?;
        range.iter().map(|n| n as f64).collect()
    } else {
        let e: f64 = args
            .common
            .n
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid energy {:?}", args.common.n)))?;
        vec![e]
    };
    let estimates = points
        .iter()
        .map(|&e| estimate(args.common.s, args.k, formula, e).map(|d| (e, d)))
        .collect::<Result<Vec<_>, _>>()?;
    if let [(_, d)] = estimates.as_slice() {
        return Ok(format!("{} {}\n", format_estimate(d.value), d.formula));
    }
    let cells: Vec<Vec<String>> = estimates
        .iter()
        .map(|(e, d)| {
            vec![
                e.to_string(),
                format_estimate(d.value),
                d.formula.to_string(),
            ]
        })
        .collect();
    let json: Vec<EstimateJson> = estimates
        .iter()
        .map(|(e, d)| EstimateJson {
            n: *e,
            estimate: d.value,
            formula: d.formula.tag(),
        })
        .collect();
    Ok(render(
        args.common.format,
        &["n", "estimate", "formula"],
        &cells,
        to_json(&json),
    ))
}

fn cmd_compare(args: &CompareArgs) -> Result<String, CliError> {
    let s = integer_power(args.common.s)?;
    let range: NRange = args.common.n.parse()?;
    let rows = comparison_rows(s, args.k, range, args.formula)?;
    Ok(render_comparison(&rows, args.common.format))
}

fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let s = integer_power(args.common.s)?;
    let range: NRange = args.common.n.parse()?;
    let rows = sweep_rows(s, &args.k, range)?;
    Ok(render_sweep(&rows, args.common.format))
}

fn cmd_selftest(args: &SelftestArgs) -> Result<String, CliError> {
    let report = SelfTest::new(args.deep).run();
    let mut out = String::new();
    for suite in &report {
        let _ = writeln!(out, "{suite}");
    }
    match report.iter().find(|r| !r.passed) {
        None => Ok(out),
        Some(failed) => {
            // still show the per-suite lines before failing
            print!("{out}");
            Err(CliError::SelftestFailed(format!(
                "{}: {}",
                failed.name, failed.detail
            )))
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Runs one parsed command, writing its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let (text, out) = match &cli.command {
        Command::Count(a) => (cmd_count(a)?, a.common.out.as_ref()),
        Command::Asymptotic(a) => (cmd_asymptotic(a)?, a.common.out.as_ref()),
        Command::Compare(a) => (cmd_compare(a)?, a.common.out.as_ref()),
        Command::Sweep(a) => (cmd_sweep(a)?, a.common.out.as_ref()),
        Command::Selftest(a) => (cmd_selftest(a)?, None),
    };
    emit(&text, out)
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gentile").chain(args.iter().copied())).unwrap()
    }

    fn output(args: &[&str]) -> Result<String, CliError> {
        match parse(args).command {
            Command::Count(a) => cmd_count(&a),
            Command::Asymptotic(a) => cmd_asymptotic(&a),
            Command::Compare(a) => cmd_compare(&a),
            Command::Sweep(a) => cmd_sweep(&a),
            Command::Selftest(a) => cmd_selftest(&a),
        }
    }

    #[test]
    fn ranges() {
        assert_eq!("6".parse::<NRange>().unwrap(), NRange::single(6));
        let r: NRange = "10..200..5".parse().unwrap();
        assert_eq!(r.iter().count(), 39);
        assert_eq!(r.iter().last(), Some(200));
        assert_eq!(
            "1..6".parse::<NRange>().unwrap().iter().collect::<Vec<_>>(),
            [1, 2, 3, 4, 5, 6]
        );
        assert!("6..1".parse::<NRange>().is_err());
        assert!("1..6..0".parse::<NRange>().is_err());
        assert!("a..b".parse::<NRange>().is_err());
        assert!("1..2..3..4".parse::<NRange>().is_err());
    }

    #[test]
    fn estimator_resolution() {
        let inf = Multiplicity::Unbounded;
        let two = Multiplicity::AtMost(2);
        assert_eq!(Estimator::Auto.resolve(inf).unwrap(), Formula::Bosonic);
        assert_eq!(Estimator::Auto.resolve(two).unwrap(), Formula::FiniteK);
        assert_eq!(Estimator::Eq20.resolve(two).unwrap(), Formula::FullGentile);
        assert!(Estimator::Eq21.resolve(inf).is_err());
        assert!(Estimator::Eq20.resolve(inf).is_err());
        assert!(Estimator::Eq23.resolve(two).is_err());
    }

    #[test]
    fn count_outputs() {
        assert_eq!(
            output(&["count", "--s", "1", "--k", "2", "--n", "6"]).unwrap(),
            "7\n"
        );
        assert_eq!(
            output(&["count", "--s", "1", "--k", "inf", "--n", "100"]).unwrap(),
            "190569292\n"
        );
        assert_eq!(
            output(&["count", "--s", "2", "--k", "1", "--n", "5"]).unwrap(),
            "1\n"
        );
        assert_eq!(
            output(&["count", "--s", "1", "--k", "1", "--n", "4..6"]).unwrap(),
            "n,exact\n4,2\n5,3\n6,4\n"
        );
        let err = output(&["count", "--s", "1.5", "--k", "1", "--n", "6"]).unwrap_err();
        assert!(matches!(err, CliError::Usage(ref m) if m.contains("integer power")));
    }

    #[test]
    fn asymptotic_outputs() {
        assert_eq!(
            output(&[
                "asymptotic",
                "--s",
                "1",
                "--k",
                "inf",
                "--n",
                "100",
                "--formula",
                "eq23"
            ])
            .unwrap(),
            "1.992808933e8 eq23\n"
        );
        assert_eq!(
            output(&[
                "asymptotic",
                "--s",
                "1",
                "--k",
                "1",
                "--n",
                "100",
                "--formula",
                "eq21"
            ])
            .unwrap(),
            "4.527831397e5 eq21\n"
        );
        let err = output(&[
            "asymptotic",
            "--s",
            "1",
            "--k",
            "inf",
            "--n",
            "100",
            "--formula",
            "eq21",
        ]);
        assert_eq!(err.unwrap_err().exit_code(), EXIT_USAGE);
        assert!(output(&["asymptotic", "--s", "1", "--k", "1", "--n", "0.5"]).is_err());
        // real s is fine for estimates
        assert!(output(&["asymptotic", "--s", "1.5", "--k", "3", "--n", "40.5"]).is_ok());
    }

    #[test]
    fn compare_outputs() {
        let csv = output(&["compare", "--s", "1", "--k", "1", "--n", "1..6"]).unwrap();
        assert!(csv.starts_with("n,exact,estimate,rel_err\n"));
        assert!(csv.lines().last().unwrap().starts_with("6,4,"));
        assert_eq!(csv.lines().count(), 7);

        let csv = output(&["compare", "--s", "1", "--k", "inf", "--n", "100..100"]).unwrap();
        assert_eq!(
            csv,
            "n,exact,estimate,rel_err\n100,190569292,1.992808933e8,0.045714\n"
        );

        let csv = output(&["compare", "--s", "3", "--k", "2", "--n", "1..50"]).unwrap();
        assert_eq!(csv.lines().count(), 51);

        assert!(output(&["compare", "--s", "1", "--k", "1", "--n", "0..6"]).is_err());
        assert!(output(&["compare", "--s", "1", "--k", "1", "--n", "9..6"]).is_err());
    }

    #[test]
    fn compare_with_eq20_is_higher() {
        let a = comparison_rows(
            1,
            Multiplicity::AtMost(3),
            "5..40".parse().unwrap(),
            Estimator::Eq20,
        )
        .unwrap();
        let b = comparison_rows(
            1,
            Multiplicity::AtMost(3),
            "5..40".parse().unwrap(),
            Estimator::Eq21,
        )
        .unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.estimate >= y.estimate);
            assert_eq!(x.exact, y.exact);
        }
    }

    #[test]
    fn sweep_single_row() {
        let csv = output(&["sweep", "--s", "1", "--k", "1", "--n", "5..5"]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,n,exact,est_eq21,est_eq20,rel_err");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("1,5,3,"));
    }

    #[test]
    fn sweep_series_layout() {
        let rows = sweep_rows(
            1,
            &[
                Multiplicity::AtMost(1),
                Multiplicity::AtMost(2),
                Multiplicity::AtMost(4),
                Multiplicity::Unbounded,
            ],
            "10..200".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(rows.len(), 4 * 191);
        assert!(rows[..191].iter().all(|r| r.k == Multiplicity::AtMost(1)));
        assert!(rows[3 * 191..].iter().all(|r| r.est_full.is_none()));
        let csv = render_sweep(&rows, OutputFormat::Csv);
        assert!(csv
            .lines()
            .last()
            .unwrap()
            .starts_with("inf,200,3972999029388,"));
        // missing eq20 column stays empty for k = inf
        assert!(csv.lines().last().unwrap().contains(",,"));
    }

    #[test]
    fn json_keeps_exact_as_string() {
        let json = output(&[
            "compare", "--s", "1", "--k", "inf", "--n", "500..500", "--format", "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let exact = v[0]["exact"].as_str().unwrap();
        assert_eq!(exact, "2300165032574323995027");
        assert!(v[0]["estimate"].as_f64().unwrap() > 2e21);

        let json = output(&[
            "sweep", "--s", "2", "--k", "1,inf", "--n", "2..3", "--format", "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[0]["k"], "1");
        // 2 is not a sum of distinct squares
        assert_eq!(v[0]["exact"], "0");
        assert!(v[0]["rel_err"].is_null());
        assert!(v[3]["est_eq20"].is_null());
    }

    #[test]
    fn table_format_aligns() {
        let t = output(&[
            "count", "--s", "1", "--k", "inf", "--n", "8..10", "--format", "table",
        ])
        .unwrap();
        assert_eq!(t, " n  exact\n 8     22\n 9     30\n10     42\n");
    }

    #[test]
    fn formatting_rules() {
        assert_eq!(format_estimate(199_280_893.349_74), "1.992808933e8");
        assert_eq!(format_estimate(0.433_783_625_301_823), "4.337836253e-1");
        assert_eq!(format_rel_err(Some(-0.0123456789)), "-0.012346");
        assert_eq!(format_rel_err(None), "");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["gentile", "count", "--s", "1"]), EXIT_USAGE);
        assert_eq!(
            main_with_args(["gentile", "count", "--s", "1", "--k", "0", "--n", "5"]),
            EXIT_USAGE
        );
        assert_eq!(main_with_args(["gentile", "bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["gentile", "--help"]), EXIT_OK);
    }
}
