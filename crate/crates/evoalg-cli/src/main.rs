//! Command-line front end: parse algebra files, run classification,
//! isomorphism, invariant, graph, tensor, inflation, quotient and census
//! commands, and emit text, JSON or DOT.
//!
//! Exit status: 0 on success, 1 on a domain error (non-simple input to
//! classify, violated family constraint, ...), 2 on a parse error
//! (unreadable file, malformed scalar, unsupported field header).
//!
//! The environment variable EVOALG_S1_BOUND overrides the power-search
//! bound of the one semi-decidable orbit rule; when that bound is hit the
//! verdict carries a diagnostic instead of failing silently.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use evoalg::acceptance;
use evoalg::algebra::EvolutionAlgebra;
use evoalg::classify::{are_isomorphic_with, census, classify, CensusOptions, FamilyTable};
use evoalg::field::Field;
use evoalg::graph::graph_of;
use evoalg::moduli::DEFAULT_POWER_BOUND;
use evoalg::tensor;
use evoalg::{Error, Result};

#[derive(Parser)]
#[command(
    name = "evoalg",
    about = "Exact classification and isomorphism testing of evolution algebras",
    version
)]
struct Cli {
    /// Emit a structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a simple algebra of dimension 2 or 3 into its canonical family.
    Classify { file: PathBuf },
    /// Decide whether two simple algebras over the same field are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Print the basis-independent counts (l, e, dim Diag) of a perfect algebra.
    Invariants { file: PathBuf },
    /// Print the associated directed graph as DOT (optionally to a file).
    Graph {
        file: PathBuf,
        /// Write the DOT text to this path instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Tensor product of two algebras over the same field.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        /// Also decompose the product into simple summands (simple factors only).
        #[arg(long)]
        decompose: bool,
    },
    /// Replace every entry w of the template by the block w * M.
    Inflate { template: PathBuf, block: PathBuf },
    /// List the one-dimensional ideals and whether each quotient is simple.
    Quotients { file: PathBuf },
    /// Enumerate all structure matrices over a finite field and classify
    /// every simple one, cross-checking sampled pairs against brute force.
    Census {
        /// Field header syntax, e.g. "F 3" or "F 2^2 t^2+t+1".
        #[arg(long)]
        field: String,
        #[arg(long)]
        dim: usize,
        /// Same-family pairs to cross-check against the oracle.
        #[arg(long, default_value_t = 200)]
        pairs: u64,
    },
    /// Run the acceptance suite; exits nonzero on any failure.
    Selftest,
}

fn read_algebra(path: &Path) -> Result<EvolutionAlgebra> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    EvolutionAlgebra::parse(&text)
}

fn s1_bound() -> u32 {
    std::env::var("EVOALG_S1_BOUND")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_POWER_BOUND)
}

struct Report {
    command: &'static str,
    field: Option<String>,
    dim: Option<usize>,
    text: String,
    result: serde_json::Value,
    diagnostics: Vec<String>,
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Classify { file } => {
            let a = read_algebra(file)?;
            let tag = classify(&a)?;
            let spec = FamilyTable::global().by_id(tag.family).expect("tag family");
            let params: serde_json::Map<String, serde_json::Value> = spec
                .params
                .iter()
                .zip(&tag.params)
                .map(|(name, value)| (name.to_string(), json!(value.to_string())))
                .collect();
            Ok(Report {
                command: "classify",
                field: Some(a.field().header()),
                dim: Some(a.dim()),
                text: tag.describe(),
                result: json!({ "family": tag.family, "params": params, "tag": tag.to_string() }),
                diagnostics: Vec::new(),
            })
        }
        Command::Iso { a, b } => {
            let a = read_algebra(a)?;
            let b = read_algebra(b)?;
            let verdict = are_isomorphic_with(&a, &b, s1_bound())?;
            let mut diagnostics = Vec::new();
            if !verdict.exhaustive {
                diagnostics.push(format!(
                    "bounded power search (EVOALG_S1_BOUND={}) was inconclusive: \
                     'NOT isomorphic' is a semi-decision",
                    s1_bound()
                ));
            }
            let text = if verdict.isomorphic { "isomorphic" } else { "NOT isomorphic" };
            Ok(Report {
                command: "iso",
                field: Some(a.field().header()),
                dim: Some(a.dim()),
                text: text.into(),
                result: json!({
                    "isomorphic": verdict.isomorphic,
                    "exhaustive": verdict.exhaustive,
                }),
                diagnostics,
            })
        }
        Command::Invariants { file } => {
            let a = read_algebra(file)?;
            let inv = a.invariants()?;
            Ok(Report {
                command: "invariants",
                field: Some(a.field().header()),
                dim: Some(a.dim()),
                text: format!("l={} e={} diag_dim={}", inv.l, inv.e, inv.diag_dim),
                result: json!({ "l": inv.l, "e": inv.e, "diag_dim": inv.diag_dim }),
                diagnostics: Vec::new(),
            })
        }
        Command::Graph { file, dot } => {
            let a = read_algebra(file)?;
            let g = graph_of(&a);
            let dot_text = g.to_dot();
            let text = match dot {
                Some(path) => {
                    std::fs::write(path, &dot_text)
                        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
                    format!(
                        "{} vertices, {} edges; DOT written to {}",
                        g.vertex_count(),
                        g.edge_count(),
                        path.display()
                    )
                }
                None => dot_text.trim_end().to_string(),
            };
            Ok(Report {
                command: "graph",
                field: Some(a.field().header()),
                dim: Some(a.dim()),
                text,
                result: json!({
                    "vertices": g.vertex_count(),
                    "edges": g.edges().map(|(u, v)| vec![u + 1, v + 1]).collect::<Vec<_>>(),
                    "strongly_connected": g.is_strongly_connected(),
                    "dot": g.to_dot(),
                }),
                diagnostics: Vec::new(),
            })
        }
        Command::Tensor { a, b, decompose } => {
            let a = read_algebra(a)?;
            let b = read_algebra(b)?;
            let t = tensor::tensor(&a, &b)?;
            let mut result = json!({
                "dim": t.dim(),
                "simple": t.is_simple(),
                "algebra": t.print(),
            });
            let mut text = format!(
                "tensor product: dimension {}, {}",
                t.dim(),
                if t.is_simple() { "simple" } else { "not simple" }
            );
            if *decompose {
                let report = tensor::decompose(&a, &b)?;
                result["decomposition"] = report.to_json();
                text.push_str(&format!(
                    "; {} component(s), predicted {}",
                    report.components.len(),
                    report.predicted_components
                ));
            }
            Ok(Report {
                command: "tensor",
                field: Some(t.field().header()),
                dim: Some(t.dim()),
                text: format!("{text}\n{}", t.print().trim_end()),
                result,
                diagnostics: Vec::new(),
            })
        }
        Command::Inflate { template, block } => {
            let template = read_algebra(template)?;
            let block = read_algebra(block)?;
            let inflated = tensor::inflate(&template, &block)?;
            Ok(Report {
                command: "inflate",
                field: Some(inflated.field().header()),
                dim: Some(inflated.dim()),
                text: format!(
                    "inflation: dimension {}, {}\n{}",
                    inflated.dim(),
                    if inflated.is_simple() { "simple" } else { "not simple" },
                    inflated.print().trim_end()
                ),
                result: json!({
                    "dim": inflated.dim(),
                    "simple": inflated.is_simple(),
                    "algebra": inflated.print(),
                }),
                diagnostics: Vec::new(),
            })
        }
        Command::Quotients { file } => {
            let a = read_algebra(file)?;
            let ideals = a.line_ideals();
            let mut lines = Vec::new();
            let mut entries = Vec::new();
            for u in &ideals {
                let pivot = u.support()[0];
                let quotient = a.quotient_by_line(u, pivot)?;
                let simple = quotient.is_simple();
                lines.push(format!(
                    "ideal spanned by {u}: quotient of dimension {} is {}",
                    quotient.dim(),
                    if simple { "simple" } else { "not simple" }
                ));
                entries.push(json!({
                    "ideal": u.to_string(),
                    "quotient_dim": quotient.dim(),
                    "quotient_simple": simple,
                    "quotient": quotient.print(),
                }));
            }
            let text = if lines.is_empty() {
                "no one-dimensional ideals".to_string()
            } else {
                lines.join("\n")
            };
            Ok(Report {
                command: "quotients",
                field: Some(a.field().header()),
                dim: Some(a.dim()),
                text,
                result: json!({ "count": ideals.len(), "quotients": entries }),
                diagnostics: Vec::new(),
            })
        }
        Command::Census { field, dim, pairs } => {
            let field = Field::parse_header(field)?;
            let report = census(&field, *dim, CensusOptions { pairs: *pairs, seed: 2024 })?;
            let families: Vec<String> =
                report.families.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let text = format!(
                "{} matrices over {}, {} simple\n{}\nsampled pairs: {} ({} isomorphic), disagreements: {}",
                report.total_matrices,
                report.field,
                report.simple_count,
                families.join("\n"),
                report.sampled_pairs,
                report.isomorphic_pairs,
                report.disagreements.len()
            );
            let diagnostics = report.disagreements.clone();
            Ok(Report {
                command: "census",
                field: Some(report.field.clone()),
                dim: Some(report.dim),
                text,
                result: serde_json::to_value(&report).expect("census report serializes"),
                diagnostics,
            })
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all();
            let all = outcomes.iter().all(|o| o.passed);
            let text =
                outcomes.iter().map(|o| o.report_line()).collect::<Vec<_>>().join("\n");
            let result = json!({
                "passed": all,
                "criteria": outcomes.iter().map(|o| json!({
                    "number": o.number,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "elapsed_ms": o.elapsed.as_millis() as u64,
                })).collect::<Vec<_>>(),
            });
            if !all {
                // Report before signalling failure through the exit status.
                emit(
                    &Report {
                        command: "selftest",
                        field: None,
                        dim: None,
                        text,
                        result,
                        diagnostics: Vec::new(),
                    },
                    cli.json,
                );
                return Err(Error::ConstraintViolated("selftest failed".into()));
            }
            Ok(Report {
                command: "selftest",
                field: None,
                dim: None,
                text,
                result,
                diagnostics: Vec::new(),
            })
        }
    }
}

fn emit(report: &Report, json_mode: bool) {
    if json_mode {
        let value = json!({
            "command": report.command,
            "field": report.field,
            "dim": report.dim,
            "result": report.result,
            "diagnostics": report.diagnostics,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
    } else {
        println!("{}", report.text);
        for d in &report.diagnostics {
            eprintln!("note: {d}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            emit(&report, cli.json);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse_error() { 2 } else { 1 })
        }
    }
}
