//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::catalog;
use crate::format::{parse_document, parse_metric, Document, FormatError};
use crate::invariants::{isometry_algebra, InvariantError, MetricTensor};
use crate::lie::LieAlgebra;
use crate::report::{self, Check, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "liework", version, about = "Exact computations on Lie algebras and finite metric groups")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Parse and validate an input.
    Check { input: String },
    /// Lower central and derived series.
    Series { input: String },
    /// Radical and nilradical.
    Nilradical { input: String },
    /// Derivation algebra and skew-symmetric derivations.
    Derivations {
        input: String,
        /// Print a basis of the skew-symmetric derivations.
        #[arg(long)]
        skew: bool,
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Isometry algebra of a nilpotent metric Lie algebra.
    IsometryAlgebra {
        input: String,
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Whether the nilradical of the isometry algebra is the base.
    NilradCondition {
        input: String,
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Finite metric groups.
    Finite {
        #[command(subcommand)]
        cmd: FiniteCmd,
    },
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Run every check on every catalog entry.
    VerifyAll,
    /// Full JSON report for one input.
    Report { input: String },
}

#[derive(Debug, Subcommand)]
enum FiniteCmd {
    /// Isometry group, automorphisms and the affine conditions.
    Analyze { input: String },
    /// The four affine conditions and their equivalence.
    Tfae { input: String },
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

struct Input {
    label: String,
    text: String,
    doc: Document,
}

/// A path to an existing file, else a catalog name.
fn load(input: &str) -> Result<Input, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
        let doc = parse_document(&text).map_err(|source| CliError::Parse { path: input.to_string(), source })?;
        return Ok(Input { label: input.to_string(), text, doc });
    }
    match catalog::find(input) {
        Some(e) => {
            let text = e.to_text();
            let doc = parse_document(&text).map_err(|source| CliError::Parse { path: input.to_string(), source })?;
            Ok(Input { label: e.name, text, doc })
        }
        None => Err(CliError::Usage(format!("`{input}` is neither a file nor a catalog entry"))),
    }
}

fn load_lie(input: &str, metric: Option<&Path>) -> Result<(Input, LieAlgebra, MetricTensor), CliError> {
    let inp = load(input)?;
    let Document::Lie(f) = &inp.doc else {
        return Err(CliError::Usage(format!("{input}: expected a Lie algebra")));
    };
    let algebra = f.algebra.clone();
    let q = match metric {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            parse_metric(&text, algebra.dim())
                .map_err(|source| CliError::Parse { path: p.display().to_string(), source })?
        }
        None => f.metric_or_identity(),
    };
    Ok((inp, algebra, q))
}

fn load_group(input: &str) -> Result<(Input, crate::finite::FiniteMetricGroup), CliError> {
    let inp = load(input)?;
    match &inp.doc {
        Document::Group(g) => {
            let g = g.clone();
            Ok((inp, g))
        }
        Document::Lie(_) => Err(CliError::Usage(format!("{input}: expected a metric group"))),
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(render_value).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn text_output(report: &Report) -> String {
    let mut out = Vec::new();
    for c in &report.checks {
        out.push(c.summary());
        for (k, v) in &c.details {
            if let Value::Array(rows) = v {
                if rows.is_empty() {
                    continue;
                }
                out.push(format!("  {k}:"));
                for r in rows {
                    out.push(format!("    {}", render_value(r)));
                }
            }
        }
    }
    out.join("\n")
}

struct Outcome {
    report: Report,
    code: i32,
}

fn verdict(report: Report) -> Outcome {
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FALSIFIED };
    Outcome { report, code }
}

fn execute(cmd: Cmd) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Cmd::Check { input } => {
            let inp = load(&input)?;
            let check = match &inp.doc {
                Document::Lie(f) => report::jacobi_check(&inp.label, &f.algebra),
                Document::Group(g) => {
                    let v = g.validate();
                    Check::new(format!("{}/validate", inp.label), v.is_empty()).with("order", g.order())
                }
            };
            verdict(Report::new("check", &inp.text, vec![check]))
        }
        Cmd::Series { input } => {
            let (inp, g, _) = load_lie(&input, None)?;
            verdict(Report::new("series", &inp.text, vec![report::series_check(&inp.label, &g)]))
        }
        Cmd::Nilradical { input } => {
            let (inp, g, _) = load_lie(&input, None)?;
            verdict(Report::new("nilradical", &inp.text, vec![report::nilradical_check(&inp.label, &g)]))
        }
        Cmd::Derivations { input, skew, metric } => {
            let (inp, g, q) = load_lie(&input, metric.as_deref())?;
            let mut c = report::derivations_check(&inp.label, &g, &q);
            if !skew {
                c.details.remove("skew_basis");
            }
            verdict(Report::new("derivations", &inp.text, vec![c]))
        }
        Cmd::IsometryAlgebra { input, metric } => {
            let (inp, g, q) = load_lie(&input, metric.as_deref())?;
            let iso = isometry_algebra(&g, &q).map_err(precondition)?;
            let total = &iso.total;
            let jac = total.validate();
            let c = Check::new(format!("{}/isometry-algebra", inp.label), jac.is_empty())
                .with("total_dim", total.dim())
                .with("base_dim", g.dim())
                .with("skew_derivations_dim", iso.stab.dim())
                .with("basis", total.basis_names().to_vec())
                .with("brackets", bracket_lines(total));
            verdict(Report::new("isometry-algebra", &inp.text, vec![c]))
        }
        Cmd::NilradCondition { input, metric } => {
            let (inp, g, q) = load_lie(&input, metric.as_deref())?;
            isometry_algebra(&g, &q).map_err(precondition)?;
            verdict(Report::new("nilrad-condition", &inp.text, vec![report::isometry_check(&inp.label, &g, &q)]))
        }
        Cmd::Finite { cmd: FiniteCmd::Analyze { input } } => {
            let (inp, g) = load_group(&input)?;
            verdict(Report::new("finite analyze", &inp.text, report::group_checks(&inp.label, &g)))
        }
        Cmd::Finite { cmd: FiniteCmd::Tfae { input } } => {
            let (inp, g) = load_group(&input)?;
            verdict(Report::new("finite tfae", &inp.text, vec![report::tfae_check(&inp.label, &g)]))
        }
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            let checks = catalog::catalog()
                .iter()
                .map(|e| {
                    Check::new(e.name.clone(), e.is_valid())
                        .with("kind", e.kind())
                        .with("size", e.size())
                        .with("provenance", e.provenance.clone())
                })
                .collect();
            verdict(Report::new("catalog list", "", checks))
        }
        Cmd::Catalog { cmd: CatalogCmd::Show { name } } => {
            let e = catalog::find(&name).ok_or_else(|| CliError::Usage(format!("no catalog entry `{name}`")))?;
            let text = e.to_text();
            let c = Check::new(e.name.clone(), e.is_valid())
                .with("kind", e.kind())
                .with("provenance", e.provenance.clone())
                .with("text", text.clone());
            verdict(Report::new("catalog show", &text, vec![c]))
        }
        Cmd::VerifyAll => {
            let entries = catalog::catalog();
            let input: String = entries.iter().map(|e| e.to_text()).collect();
            let mut checks: Vec<Check> = entries.par_iter().flat_map_iter(report::entry_checks).collect();
            checks.extend(report::fixture_checks());
            checks.sort_by(|a, b| a.name.cmp(&b.name));
            verdict(Report::new("verify-all", &input, checks))
        }
        Cmd::Report { input } => {
            let inp = load(&input)?;
            let checks = match &inp.doc {
                Document::Lie(f) => report::lie_checks(&inp.label, &f.algebra, &f.metric_or_identity()),
                Document::Group(g) => report::group_checks(&inp.label, g),
            };
            verdict(Report::new("report", &inp.text, checks))
        }
    })
}

fn precondition(e: InvariantError) -> CliError {
    match e {
        e @ InvariantError::NotNilpotent(_) => CliError::Precondition(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn bracket_lines(g: &LieAlgebra) -> Vec<String> {
    let names = g.basis_names();
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.bracket_basis(i, j);
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| format!("{}*{}", crate::exactla::render_rat(c), names[k]))
                .collect();
            if !terms.is_empty() {
                out.push(format!("[{},{}] = {}", names[i], names[j], terms.join(" + ")));
            }
        }
    }
    out
}

/// Runs the CLI with `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    match execute(cli.cmd) {
        Ok(o) => {
            let text = if cli.json { o.report.to_json(start.elapsed().as_millis()) } else { text_output(&o.report) };
            let _ = writeln!(out, "{text}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
