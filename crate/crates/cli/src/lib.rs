//! Command-line front end: instance generation and every verification,
//! each producing a [`RunReport`].

pub mod commands;
pub mod report;
pub mod selftest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::{strip_wall_time, RunReport};

#[derive(Debug, Parser)]
#[command(name = "cycletri", version, about = "Exact parity, constant-term and colouring checks for cycle-plus-triangles graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Instance file (JSON)
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Seed for every random choice (instances, grids, lists)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Triangles for generated cycle-plus-triangles instances, polygons for chord systems
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Odd part sizes for generated partitioned graphs, e.g. 3,3,5
    #[arg(long, global = true)]
    pub parts: Option<String>,
    /// Three distinct nonzero rationals, e.g. 1,2,3 or -1/2,3,5/7
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Overrides the main budget of the subcommand: transversals (parity, chords),
    /// expansion terms (ct), max n (colorings, connected), grid points (choosable)
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for parallel reductions
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Machine-readable report
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    CycleTriangles,
    Partitioned,
    Chords,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance
    Gen {
        #[arg(long, value_enum, default_value = "cycle-triangles")]
        kind: Kind,
        /// Write the instance here instead of embedding it in the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constant term by expansion and by the grid formula, with the mod 4 check
    Ct,
    /// Proper 3-colourings, orbit count and balance statistics
    Colorings,
    /// A colouring whose blue and red vertices induce a connected graph
    Connected,
    /// Grid certificate and explicit list colouring
    Choosable {
        /// JSON file: array of 3-element arrays of "p/q" strings, one per vertex
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Eulerian transversal count and special-sequence parity
    Parity,
    /// Even-crossing selections of inscribed polygons
    Chords,
    /// Run the invariant suite at desk scale
    Selftest,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cycletri::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for bad input, 2 for an exceeded budget, 3 for a failed theorem check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => 2,
            CliError::Core(e) if e.is_violation() => 3,
            _ => 1,
        }
    }
}

/// Runs one invocation and returns the rendered report and its exit code.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let report = commands::dispatch(&cli.command, &cli.common)?;
    let text = if cli.common.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Ok((text, if report.all_ok() { 0 } else { 3 }))
}

/// Like [`run`], inside a pool with `--threads` workers when given.
pub fn run_with_threads(cli: &Cli) -> Result<(String, i32), CliError> {
    match cli.common.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
            pool.install(|| run(cli))
        }
        None => run(cli),
    }
}
