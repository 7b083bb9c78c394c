//! Implementation of the `hampath` command line.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 graph not admissible,
//! 3 verification failure, 4 internal inconsistency.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hampath_core::census::{census_row, CensusSummary};
use hampath_core::{
    admissibility, brute_force_decompose_bounded, count_admissible_with, enumerate_specs,
    hamilton_decompose_traced, verify_decomposition, DecompositionDocument, MultipartiteSpec,
    OracleOutcome, VerificationReport, DEFAULT_ORACLE_BOUND,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "hampath",
    version,
    about = "Hamilton path decompositions of complete multipartite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Accepted for reproducible invocations; every run is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the graph is admissible.
    Admissible {
        #[arg(long)]
        parts: String,
    },
    /// Construct a Hamilton path decomposition.
    Decompose {
        #[arg(long)]
        parts: String,
        /// Check the result with the independent verifier.
        #[arg(long)]
        verify: bool,
        /// Include per-stage component totals.
        #[arg(long)]
        trace: bool,
    },
    /// Check a stored decomposition document.
    Verify {
        #[arg(long)]
        parts: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Search exhaustively for a decomposition.
    Oracle {
        #[arg(long)]
        parts: String,
        /// Largest order accepted.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
        /// Give up after this many search nodes.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Count admissible graphs by order.
    Census {
        #[arg(long)]
        max_order: usize,
        /// Also write one row per spec to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads for counting.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Count the one-vertex graph and single-part specs too.
        #[arg(long)]
        include_trivial: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("verification failed")]
    Verification,
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::NotAdmissible(_) => 2,
            CliError::Verification => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<hampath_core::Error> for CliError {
    fn from(e: hampath_core::Error) -> Self {
        use hampath_core::Error as E;
        match e {
            E::Parse(_) | E::OrderTooLarge { .. } => CliError::Input(e.to_string()),
            E::NotAdmissible(ref r) => CliError::NotAdmissible(format!("{:?}", r.reason)),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn parse_spec(text: &str) -> Result<MultipartiteSpec, CliError> {
    Ok(text.parse::<MultipartiteSpec>()?)
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    value: &Value,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("json values serialise")
        )?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn verification_text(report: &VerificationReport) -> String {
    if report.valid {
        return "valid\n".to_owned();
    }
    let mut s = String::from("invalid\n");
    for f in &report.failures {
        match f.path {
            Some(i) => s.push_str(&format!("  path {i}: {:?}\n", f.reason)),
            None => s.push_str(&format!("  {:?}\n", f.reason)),
        }
    }
    s
}

fn document_text(doc: &DecompositionDocument) -> String {
    let mut s = format!("t = {}\n", doc.t);
    for p in &doc.paths {
        s.push_str(&p.join(" "));
        s.push('\n');
    }
    s
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Admissible { parts } => {
            let spec = parse_spec(parts)?;
            let report = admissibility(&spec);
            let mut value = serde_json::to_value(&report).expect("report serialises");
            value["spec"] = json!(spec.to_string());
            emit(out, format, &value, || {
                format!(
                    "{spec}: {} (n = {}, m = {}, t = {}, max degree {}, {:?})\n",
                    if report.admissible {
                        "admissible"
                    } else {
                        "not admissible"
                    },
                    report.n,
                    report.m,
                    report.t.map_or("-".to_owned(), |t| t.to_string()),
                    report.max_degree,
                    report.reason
                )
            })
        }
        Command::Decompose {
            parts,
            verify,
            trace,
        } => {
            let spec = parse_spec(parts)?;
            let (d, pipeline_trace) = hamilton_decompose_traced(&spec)?;
            let doc = DecompositionDocument::new(&spec, &d);
            let mut value = serde_json::to_value(&doc).expect("document serialises");
            let report = verify.then(|| verify_decomposition(&spec, &d));
            if *trace {
                value["trace"] = serde_json::to_value(&pipeline_trace).expect("trace serialises");
            }
            if let Some(r) = &report {
                value["verification"] = serde_json::to_value(r).expect("report serialises");
            }
            emit(out, format, &value, || {
                let mut s = document_text(&doc);
                if *trace {
                    for e in &pipeline_trace.entries {
                        s.push_str(&format!("trace {} {}\n", e.stage, e.component_total));
                    }
                }
                if let Some(r) = &report {
                    s.push_str(&verification_text(r));
                }
                s
            })?;
            match report {
                Some(r) if !r.valid => Err(CliError::Verification),
                _ => Ok(()),
            }
        }
        Command::Verify { parts, input } => {
            let spec = parse_spec(parts)?;
            let text = std::fs::read_to_string(input)?;
            let doc = DecompositionDocument::from_json(&text)?;
            if doc.spec()? != spec {
                return Err(CliError::Input(format!(
                    "document is for parts {:?}, not {spec}",
                    doc.parts
                )));
            }
            let report = verify_decomposition(&spec, &doc.decomposition(&spec)?);
            let value = serde_json::to_value(&report).expect("report serialises");
            emit(out, format, &value, || verification_text(&report))?;
            if report.valid {
                Ok(())
            } else {
                Err(CliError::Verification)
            }
        }
        Command::Oracle {
            parts,
            bound,
            limit,
        } => {
            let spec = parse_spec(parts)?;
            let outcome = brute_force_decompose_bounded(&spec, *limit, *bound)?;
            let (label, doc) = match &outcome {
                OracleOutcome::Found(d) => ("found", Some(DecompositionDocument::new(&spec, d))),
                OracleOutcome::Exhausted => ("exhausted", None),
                OracleOutcome::LimitReached => ("limit_reached", None),
            };
            let value = json!({ "outcome": label, "decomposition": doc });
            emit(out, format, &value, || {
                let mut s = format!("{label}\n");
                if let Some(doc) = &doc {
                    s.push_str(&document_text(doc));
                }
                s
            })
        }
        Command::Census {
            max_order,
            csv,
            jobs,
            include_trivial,
        } => {
            let min_parts = if *include_trivial { 1 } else { 2 };
            if let Some(path) = csv {
                write_csv(path, *max_order, min_parts)?;
            }
            let summary = CensusSummary {
                max_order: *max_order,
                min_parts,
                cumulative: count_admissible_with(*max_order, min_parts, *jobs),
            };
            let value = serde_json::to_value(&summary).expect("summary serialises");
            emit(out, format, &value, || {
                summary
                    .cumulative
                    .iter()
                    .map(|(n, c)| format!("n <= {n}: {c}\n"))
                    .collect()
            })
        }
    }
}

fn write_csv(path: &PathBuf, max_order: usize, min_parts: usize) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["n", "spec", "admissible", "t", "max_degree", "star_case"])?;
    for spec in enumerate_specs(max_order, min_parts) {
        let row = census_row(&spec)?;
        let star = row.star_case.map(|c| {
            serde_json::to_value(c)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default()
        });
        w.write_record([
            row.order.to_string(),
            row.spec.to_string(),
            row.admissible.to_string(),
            row.t.map(|t| t.to_string()).unwrap_or_default(),
            row.max_degree.to_string(),
            star.unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
