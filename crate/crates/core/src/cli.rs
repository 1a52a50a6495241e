//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verified property fails, 2 on usage
//! or domain errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{default_grid, hankel_probe, verify_grid, Bounds};
use crate::qdist::{self, Family, QDistSpec};
use crate::report::IdentityId;
use crate::ring::rational::{parse_rational, rational_to_f64, render_f64};
use crate::ring::{render_rational, BigRational, QMode, RingScalar};
use crate::whitney::{whitney_first_triangle, whitney_second_triangle, Kind, Triangle, WhitneyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qwhitney", version, about = "(q,r)-Whitney numbers, identities and q-distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a Whitney triangle.
    Table(TableArgs),
    /// Check identities over a parameter grid.
    Verify(VerifyArgs),
    /// Heine and Euler distributions.
    Dist(DistArgs),
    /// Hankel transforms of Dowling sequences across r.
    Hankel(HankelArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    First,
    Second,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Heine,
    Euler,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DistOp {
    Pmf,
    Moments,
    Sample,
}

#[derive(clap::Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    nmax: usize,
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    #[arg(long, default_value = "default")]
    grid: String,
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    q: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct DistArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "pmf")]
    op: DistOp,
    #[arg(long, default_value_t = 5)]
    n: u64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(clap::Args, Debug)]
struct HankelArgs {
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    #[arg(long = "r-values", allow_hyphen_values = true)]
    r_values: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long)]
    order: usize,
}

/// One triangle entry in a [`TableDocument`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub value: String,
}

/// Serialised form of a [`Triangle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub format_version: String,
    pub kind: String,
    pub m: String,
    pub r: String,
    pub qmode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q0: Option<String>,
    pub nmax: usize,
    pub rows: Vec<TableRow>,
}

impl TableDocument {
    pub const FORMAT_VERSION: &'static str = "1";

    pub fn from_triangle(tri: &Triangle) -> Result<Self> {
        let (qmode, q0) = match &tri.params.qmode {
            QMode::Symbolic => ("symbolic".to_string(), None),
            QMode::Rational(q0) => ("rational".to_string(), Some(render_rational(q0))),
            QMode::Float(_) => return Err(Error::IncompatibleMode("table")),
        };
        let rows = tri
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(n, row)| {
                row.iter().enumerate().map(move |(k, v)| TableRow {
                    n,
                    k,
                    value: v.to_string(),
                })
            })
            .collect();
        Ok(Self {
            format_version: Self::FORMAT_VERSION.to_string(),
            kind: tri.kind.as_str().to_string(),
            m: render_rational(&tri.params.m),
            r: render_rational(&tri.params.r),
            qmode,
            q0,
            nmax: tri.nmax(),
            rows,
        })
    }

    pub fn to_triangle(&self) -> Result<Triangle> {
        if self.format_version != Self::FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {}", self.format_version)));
        }
        let kind = match self.kind.as_str() {
            "first" => Kind::First,
            "second" => Kind::Second,
            other => return Err(Error::Parse(format!("unknown kind `{other}`"))),
        };
        let qmode = match (self.qmode.as_str(), &self.q0) {
            ("symbolic", None) => QMode::Symbolic,
            ("rational", Some(q0)) => QMode::Rational(parse_rational(q0)?),
            _ => return Err(Error::Parse("inconsistent qmode and q0".into())),
        };
        let params = WhitneyParams::new(parse_rational(&self.m)?, parse_rational(&self.r)?, qmode)?;
        let kind_of = params.qmode.scalar_kind();
        let mut rows: Vec<Vec<RingScalar>> = (0..=self.nmax).map(|n| Vec::with_capacity(n + 1)).collect();
        for row in &self.rows {
            if row.n > self.nmax || row.k != rows[row.n].len() {
                return Err(Error::Parse(format!("row ({}, {}) out of order", row.n, row.k)));
            }
            rows[row.n].push(RingScalar::parse(&row.value, kind_of)?);
        }
        if rows.iter().enumerate().any(|(n, r)| r.len() != n + 1) {
            return Err(Error::Parse("incomplete triangle".into()));
        }
        Ok(Triangle::from_rows(kind, params, rows))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table documents serialise")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One line per `n`, cells separated by `,`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.nmax {
            let cells: Vec<&str> = self.rows.iter().filter(|r| r.n == n).map(|r| r.value.as_str()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Table(a) => run_table(&a, out),
        Command::Verify(a) => run_verify(&a, out),
        Command::Dist(a) => run_dist(&a, out),
        Command::Hankel(a) => run_hankel(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            EXIT_VIOLATION
        }
    }
}

fn run_table(a: &TableArgs, out: &mut dyn Write) -> CliResult {
    let params = WhitneyParams::new(parse_rational(&a.m)?, parse_rational(&a.r)?, QMode::parse_exact(&a.q)?)?;
    let tri = match a.kind {
        KindArg::First => whitney_first_triangle(&params, a.nmax)?,
        KindArg::Second => whitney_second_triangle(&params, a.nmax)?,
    };
    let doc = TableDocument::from_triangle(&tri)?;
    let text = match a.format {
        FormatArg::Json => doc.to_json() + "\n",
        FormatArg::Csv => doc.to_csv(),
    };
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_suite(s: &str) -> Result<Vec<IdentityId>> {
    if s.trim() == "all" {
        return Ok(IdentityId::ALL.to_vec());
    }
    let mut ids: Vec<IdentityId> = s.split(',').map(str::parse).collect::<Result<_>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridCell {
    Text(String),
    Int(i64),
}

impl GridCell {
    fn rational(&self) -> Result<BigRational> {
        match self {
            GridCell::Text(s) => parse_rational(s),
            GridCell::Int(n) => Ok(BigRational::from_integer((*n).into())),
        }
    }
}

/// `default`, or a path to a JSON list of `[m, r]` pairs.
fn load_grid(spec: &str) -> Result<Vec<(BigRational, BigRational)>> {
    if spec == "default" {
        return Ok(default_grid());
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let cells: Vec<(GridCell, GridCell)> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    cells.iter().map(|(m, r)| Ok((m.rational()?, r.rational()?))).collect()
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let ids = parse_suite(&a.suite)?;
    let grid = load_grid(&a.grid)?;
    let qmode = QMode::parse_exact(&a.q)?;
    let bounds = Bounds::new(a.nmax);
    let reports = verify_grid(&ids, &grid, &qmode, &bounds)?;
    if let Some(path) = &a.report {
        let mut text = String::new();
        for rep in &reports {
            text.push_str(&rep.to_json().to_string());
            text.push('\n');
        }
        fs::write(path, text)?;
    }
    let mut failed = 0;
    for id in &ids {
        let mine: Vec<_> = reports.iter().filter(|r| r.id == *id).collect();
        let ok = mine.iter().filter(|r| r.pass).count();
        failed += mine.len() - ok;
        writeln!(out, "{id}\t{ok}/{}\t{}", mine.len(), if ok == mine.len() { "pass" } else { "FAIL" })?;
    }
    if failed > 0 {
        return Err(Failure::Violation(format!("{failed} identity checks failed")));
    }
    Ok(())
}

fn run_dist(a: &DistArgs, out: &mut dyn Write) -> CliResult {
    let family = match a.family {
        FamilyArg::Heine => Family::Heine,
        FamilyArg::Euler => Family::Euler,
    };
    let mut spec = QDistSpec::new(family, a.q, a.lambda)?;
    if let Some(tol) = a.tol {
        spec = spec.with_tol(tol)?;
    }
    match a.op {
        DistOp::Pmf => {
            for x in 0..=a.n {
                writeln!(out, "{x}\t{}", render_f64(qdist::pmf(&spec, x)?))?;
            }
        }
        DistOp::Moments => {
            let m = rational_to_f64(&parse_rational(&a.m)?);
            let r = rational_to_f64(&parse_rational(&a.r)?);
            let q = spec.q;
            let qint = move |x: u64| (1.0 - q.powi(x as i32)) / (1.0 - q);
            writeln!(out, "moment\torder\tvalue\toracle\tdelta")?;
            for k in 0..=a.n {
                let value = qdist::q_factorial_moment(&spec, k)?;
                let g = |x: u64| (0..k).map(|i| qint(x.saturating_sub(i))).product::<f64>();
                let oracle = qdist::direct_moment_oracle(&spec, g, spec.tol)?;
                write_moment(out, "factorial", k, value, oracle)?;
            }
            for k in 0..=a.n {
                let value = qdist::whitney_moment(&spec, m, r, k)?;
                let oracle = qdist::direct_moment_oracle(&spec, |x| (m * qint(x) + r).powi(k as i32), spec.tol)?;
                write_moment(out, "whitney", k, value, oracle)?;
            }
        }
        DistOp::Sample => {
            for x in qdist::sample(&spec, a.count, a.seed)? {
                writeln!(out, "{x}")?;
            }
        }
    }
    Ok(())
}

fn write_moment(out: &mut dyn Write, label: &str, k: u64, value: f64, oracle: f64) -> std::io::Result<()> {
    writeln!(
        out,
        "{label}\t{k}\t{}\t{}\t{}",
        render_f64(value),
        render_f64(oracle),
        render_f64((value - oracle).abs())
    )
}

fn run_hankel(a: &HankelArgs, out: &mut dyn Write) -> CliResult {
    let m = parse_rational(&a.m)?;
    let r_values = a
        .r_values
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    let qmode = QMode::parse_exact(&a.q)?;
    let probe = hankel_probe(&m, &r_values, &qmode, a.order)?;
    for (r, row) in &probe.rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}\t{}", render_rational(r), cells.join("\t"))?;
    }
    if !probe.consistent() {
        return Err(Failure::Violation("Hankel rows differ across r".into()));
    }
    Ok(())
}
