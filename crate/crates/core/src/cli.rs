//! Command-line front end.
//!
//! `run` is the whole program minus process plumbing: it takes the argument
//! list and output sinks and returns the exit status, so tests drive it
//! directly.
//!
//! Exit status: 0 on success, 1 when `verify`/`scan` finds anything other than
//! a boundary mismatch, 2 on invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{self, ScanSummary, VerificationReport, VerificationRow, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::ideal::{FundamentalDiscriminant, PrimitiveIdeal};
use crate::lattice::MinimaResult;
use crate::qform::BinaryQuadraticForm;

type Z = i128;

/// Environment variable capping the discriminants the CLI accepts.
pub const MAX_D_VAR: &str = "WRLAT_MAX_D";

/// Default cap. Scan coefficients grow like `d^(3/2)` and composition
/// multiplies them, which stays well inside `i128` below this.
pub const DEFAULT_MAX_D: Z = 10_000_000;

pub const CSV_HEADER: &str = "d,a,b,theorem_wr,oracle_wr,boundary,lambda1,min_vector_count";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "wrlat",
    version,
    about = "Well-rounded ideal lattices of real quadratic fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for `scan` (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<NonZeroUsize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether one ideal is well-rounded.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        d: Z,
        #[arg(long, allow_negative_numbers = true)]
        a: Z,
        #[arg(long, allow_negative_numbers = true)]
        b: Z,
    },
    /// List the ideals of one discriminant predicted well-rounded.
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        d: Z,
    },
    /// Check prediction against the lattice oracle for one discriminant.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        d: Z,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Verify every fundamental discriminant in [lo, hi].
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        lo: Z,
        #[arg(long, allow_negative_numbers = true)]
        hi: Z,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Reduce a positive definite form given as "a,b,c".
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Compose two primitive forms of equal discriminant.
    Compose {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
}

/// Rendered output plus the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

/// Parses `args` (including the program name), runs, and writes results.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let max_d = match max_d_from_env() {
        Ok(m) => m,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let outcome = match dispatch(&cli, max_d) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => stdout.write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return 2;
    }
    outcome.status
}

fn max_d_from_env() -> std::result::Result<Z, String> {
    match std::env::var(MAX_D_VAR) {
        Ok(v) => v
            .trim()
            .parse::<Z>()
            .map_err(|_| format!("{MAX_D_VAR}={v:?} is not an integer")),
        Err(_) => Ok(DEFAULT_MAX_D),
    }
}

fn check_cap(d: Z, max_d: Z) -> Result<()> {
    if d > max_d {
        return Err(Error::LimitExceeded {
            d: d.to_string(),
            max: format!("{MAX_D_VAR}={max_d}"),
        });
    }
    Ok(())
}

fn discriminant(d: Z, max_d: Z) -> Result<FundamentalDiscriminant<Z>> {
    check_cap(d, max_d)?;
    FundamentalDiscriminant::new(d)
}

/// Runs a parsed command. `max_d` caps every discriminant touched.
pub fn dispatch(cli: &Cli, max_d: Z) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Classify { d, a, b } => {
            let ideal = PrimitiveIdeal::new(discriminant(*d, max_d)?, *a, *b)?;
            let row = classify::verify_ideal(&ideal)?;
            Ok(Outcome::ok(render_classify(*d, &row, format)))
        }
        Command::Enumerate { d } => {
            let fd = discriminant(*d, max_d)?;
            let ideals = classify::enumerate_wr_ideals(&fd)?;
            let rows = ideals
                .iter()
                .map(classify::verify_ideal)
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::ok(render_enumerate(&fd, &ideals, &rows, format)))
        }
        Command::Verify { d, margin } => {
            let report = classify::verify_discriminant(&discriminant(*d, max_d)?, *margin)?;
            let reports = [report];
            Ok(scan_outcome(&reports, format, true))
        }
        Command::Scan { lo, hi, margin } => {
            check_cap(*hi, max_d)?;
            let jobs = cli
                .jobs
                .or_else(|| std::thread::available_parallelism().ok())
                .map_or(1, NonZeroUsize::get);
            let reports = classify::scan_range(lo, hi, *margin, jobs)?;
            Ok(scan_outcome(&reports, format, false))
        }
        Command::Reduce { form } => {
            let f: BinaryQuadraticForm<Z> = form.parse()?;
            let r = f.reduce()?.into_inner();
            Ok(Outcome::ok(render_form(&r, format)))
        }
        Command::Compose { first, second } => {
            let f: BinaryQuadraticForm<Z> = first.parse()?;
            let g: BinaryQuadraticForm<Z> = second.parse()?;
            Ok(Outcome::ok(render_form(&f.compose(&g)?, format)))
        }
    }
}

fn scan_outcome(reports: &[VerificationReport<Z>], format: Format, single: bool) -> Outcome {
    let summary = ScanSummary::of(reports);
    let output = match format {
        Format::Csv => render_csv(reports),
        Format::Json if single => to_json(&ReportJson::from(&reports[0])),
        Format::Json => to_json(&reports.iter().map(ReportJson::from).collect::<Vec<_>>()),
        Format::Text => render_summary_text(reports, &summary),
    };
    let status = if summary.is_clean() { 0 } else { 1 };
    Outcome { output, status }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bit(b: bool) -> u8 {
    u8::from(b)
}

fn csv_row(out: &mut String, d: Z, row: &VerificationRow<Z>) {
    let _ = writeln!(
        out,
        "{d},{},{},{},{},{},{},{}",
        row.a,
        row.b,
        bit(row.theorem.decision),
        bit(row.oracle),
        bit(row.theorem.boundary),
        row.minima.lambda1,
        row.minima.vectors.len()
    );
}

/// All rows of all reports under [`CSV_HEADER`], in `(d, a, b)` order.
pub fn render_csv(reports: &[VerificationReport<Z>]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        for row in &r.rows {
            csv_row(&mut out, *r.d.get(), row);
        }
    }
    out
}

#[derive(Serialize)]
struct RowJson<'a> {
    d: Z,
    a: Z,
    b: Z,
    theorem_wr: bool,
    oracle_wr: bool,
    boundary: bool,
    minima: &'a MinimaResult<Z>,
}

impl<'a> RowJson<'a> {
    fn new(d: Z, row: &'a VerificationRow<Z>) -> Self {
        RowJson {
            d,
            a: row.a,
            b: row.b,
            theorem_wr: row.theorem.decision,
            oracle_wr: row.oracle,
            boundary: row.theorem.boundary,
            minima: &row.minima,
        }
    }
}

#[derive(Serialize)]
struct MismatchJson {
    d: Z,
    a: Z,
    b: Z,
    boundary: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    d: Z,
    margin: u32,
    rows: Vec<RowJson<'a>>,
    mismatches: Vec<MismatchJson>,
}

impl<'a> From<&'a VerificationReport<Z>> for ReportJson<'a> {
    fn from(r: &'a VerificationReport<Z>) -> Self {
        let d = *r.d.get();
        ReportJson {
            d,
            margin: r.margin,
            rows: r.rows.iter().map(|row| RowJson::new(d, row)).collect(),
            mismatches: r
                .mismatches()
                .map(|row| MismatchJson {
                    d,
                    a: row.a,
                    b: row.b,
                    boundary: row.theorem.boundary,
                })
                .collect(),
        }
    }
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn render_classify(d: Z, row: &VerificationRow<Z>, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            csv_row(&mut out, d, row);
            out
        }
        Format::Json => to_json(&RowJson::new(d, row)),
        Format::Text => {
            let head = match (row.theorem.decision, row.oracle) {
                (true, true) => "WR",
                (false, false) => "not WR",
                _ => "MISMATCH",
            };
            let mut out = format!(
                "{head} (theorem: {}, oracle: {}{})\n",
                yes_no(row.theorem.decision),
                yes_no(row.oracle),
                if row.theorem.boundary {
                    ", boundary"
                } else {
                    ""
                }
            );
            let _ = writeln!(
                out,
                "lambda1 = {}, minimal vectors: {}",
                row.minima.lambda1,
                vectors_text(&row.minima)
            );
            out
        }
    }
}

fn vectors_text(m: &MinimaResult<Z>) -> String {
    m.vectors
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct EnumerateJson<'a> {
    d: Z,
    ideals: &'a [PrimitiveIdeal<Z>],
}

fn render_enumerate(
    d: &FundamentalDiscriminant<Z>,
    ideals: &[PrimitiveIdeal<Z>],
    rows: &[VerificationRow<Z>],
    format: Format,
) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for row in rows {
                csv_row(&mut out, *d.get(), row);
            }
            out
        }
        Format::Json => to_json(&EnumerateJson {
            d: *d.get(),
            ideals,
        }),
        Format::Text => {
            let mut out = format!("d = {d}: {} well-rounded ideal(s)\n", ideals.len());
            for i in ideals {
                let _ = writeln!(out, "{i}");
            }
            out
        }
    }
}

fn render_summary_text(reports: &[VerificationReport<Z>], s: &ScanSummary<Z>) -> String {
    let mut out = String::new();
    for r in reports {
        let wr = r.wr_norms();
        if wr.is_empty() && r.mismatches().next().is_none() {
            continue;
        }
        let norms = wr.iter().map(Z::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "d = {}: WR norms {{{norms}}}", r.d);
        for row in r.mismatches() {
            let _ = writeln!(
                out,
                "  mismatch at a = {}, b = {}: theorem {}, oracle {}{}, lambda1 = {}",
                row.a,
                row.b,
                yes_no(row.theorem.decision),
                yes_no(row.oracle),
                if row.theorem.boundary {
                    " (boundary)"
                } else {
                    ""
                },
                row.minima.lambda1
            );
        }
    }
    let _ = writeln!(
        out,
        "{} discriminant(s), {} ideal(s), {} WR ideal(s)",
        s.discriminants,
        s.ideals,
        s.wr_ideals.len()
    );
    let _ = writeln!(
        out,
        "mismatches: {} boundary, {} other",
        s.boundary_mismatches.len(),
        s.hard_mismatches.len()
    );
    let checks = [
        ("order-two vs a | b", s.claim1_violations.len()),
        ("b = 0 never WR", s.b_zero_violations.len()),
        ("reduced symmetric criterion", s.criterion_mismatches.len()),
        ("norm divides d, a = b", s.divisor_violations.len()),
        ("even d needs d/4 = 3 mod 4", s.parity_violations.len()),
        ("strict window", s.sharpness_violations.len()),
    ];
    for (name, n) in checks {
        let _ = writeln!(
            out,
            "check {name}: {}",
            if n == 0 {
                "ok".to_string()
            } else {
                format!("{n} violation(s)")
            }
        );
    }
    out
}

fn render_form(f: &BinaryQuadraticForm<Z>, format: Format) -> String {
    match format {
        Format::Csv => format!("a,b,c\n{f}\n"),
        Format::Json => to_json(f),
        Format::Text => format!("{f}\n"),
    }
}
