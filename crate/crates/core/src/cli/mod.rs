//! Command-line front end: spec files in, deterministic JSON/CSV/DOT out.

mod commands;
mod probe;
mod spec;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use commands::{cmd_census, cmd_cycles, cmd_genus, cmd_invariants, CensusArtifacts};
pub use probe::{
    canonical_pairs, cmd_probe, evaluate_candidate, maps_of_degree, CandidateResult, ProbeOptions,
};
pub use spec::{parse_spec, Coef, FieldSection, Options, SpecError, Tower, TowerSection, TowerSpecFile};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Argument(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Io { .. } | CliError::Failed(_) => 1,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    pub inputs: Value,
    pub results: Value,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            command: command.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            inputs,
            results: json!({}),
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Evidence against a proven statement was found and written to the report.
    TheoremViolation(String),
    /// The probe stopped at its budget; the report is partial.
    BudgetExceeded(String),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub status: Status,
}

impl Outcome {
    pub fn ok(report: RunReport) -> Self {
        Outcome {
            report,
            status: Status::Ok,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::BudgetExceeded(_) => 1,
            Status::TheoremViolation(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "towerlab", version, about = "Arithmetic graphs and invariants of recursive towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Components, regular core and singular part of one level.
    Census {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
        /// Graphviz output.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cycle counts against the fixed-point bound.
    Cycles {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Genus sequence of the curves of the tower.
    Genus {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// lambda, beta, deficiency and zeta from the regular core.
    Invariants {
        #[arg(long)]
        spec: PathBuf,
        /// Limit of d^n / g_n, as P/Q.
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep separated towers of a given degree for regular cores.
    Probe {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rmax: u32,
        /// Maximum number of candidates to evaluate.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Census { .. } => "census",
            Command::Cycles { .. } => "cycles",
            Command::Genus { .. } => "genus",
            Command::Invariants { .. } => "invariants",
            Command::Probe { .. } => "probe",
        }
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Reads, parses and builds a spec, then enforces the tower hypotheses.
pub fn load_tower(path: &Path) -> Result<Tower, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let tower = parse_spec(&text)?.build()?;
    check_hypotheses(&tower)?;
    Ok(tower)
}

pub fn check_hypotheses(tower: &Tower) -> Result<(), CliError> {
    let (d1, d2) = tower.corr.bidegree();
    if d1 != d2 && !tower.options.allow_unequal_bidegree {
        return Err(CliError::Hypothesis(format!(
            "bidegree ({d1},{d2}) is not of type (d,d); set allow_unequal_bidegree = true to proceed"
        )));
    }
    if d1.max(d2) < 2 {
        return Err(CliError::Hypothesis(format!(
            "type ({d1},{d2}) needs d >= 2"
        )));
    }
    Ok(())
}

/// Parses `P/Q` or `P`.
pub fn parse_ratio(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Argument(format!("expected P/Q, got '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok((n, d))
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Census {
            spec,
            level,
            dot,
            json,
        } => {
            let tower = load_tower(spec)?;
            let (outcome, artifacts) = cmd_census(&tower, *level, spec_echo(spec))?;
            if let Some(path) = dot {
                write_file(path, &artifacts.dot)?;
            }
            finish(outcome, json.as_deref())
        }
        Command::Cycles {
            spec,
            level,
            nmax,
            csv,
            json,
        } => {
            let tower = load_tower(spec)?;
            let (outcome, table) = cmd_cycles(&tower, *level, *nmax, spec_echo(spec))?;
            if let Some(path) = csv {
                write_file(path, &table)?;
            }
            finish(outcome, json.as_deref())
        }
        Command::Genus { spec, nmax, json } => {
            let tower = load_tower(spec)?;
            finish(cmd_genus(&tower, *nmax, spec_echo(spec))?, json.as_deref())
        }
        Command::Invariants { spec, ell, json } => {
            let tower = load_tower(spec)?;
            let ell = ell.as_deref().map(parse_ratio).transpose()?;
            finish(cmd_invariants(&tower, ell, spec_echo(spec))?, json.as_deref())
        }
        Command::Probe {
            p,
            m,
            degree,
            rmax,
            budget,
            out,
        } => cmd_probe(
            &ProbeOptions {
                p: *p,
                m: *m,
                degree: *degree,
                rmax: *rmax,
                budget: *budget,
            },
            Some(out),
        ),
    }
}

fn spec_echo(path: &Path) -> Value {
    json!(path.display().to_string())
}

fn finish(outcome: Outcome, json_out: Option<&Path>) -> Result<Outcome, CliError> {
    if let Some(path) = json_out {
        write_file(path, &outcome.report.to_json())?;
    }
    Ok(outcome)
}

/// Honors `TOWERLAB_THREADS` as a cap on the worker pool.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("TOWERLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Argument(format!("TOWERLAB_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(failed)
}
