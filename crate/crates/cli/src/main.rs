//! Command-line front door for the workbench: build instance descriptions,
//! run verification probe suites, and export CSV tables.
//!
//! Exit codes: 0 all checks pass, 1 a probe failed, 2 configuration error,
//! 3 I/O error.

mod artifacts;
mod config;
mod construct;
mod export;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CommandKind, RunConfig};

#[derive(Parser)]
#[command(
    name = "micp-workbench",
    version,
    about = "Workbench for unions of convex sets selected by integer indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a JSON description (and optional SVG figure) of a construction.
    Construct(CommonArgs),
    /// Run the probe suite and write summary.json plus probes.csv.
    Verify(CommonArgs),
    /// Emit CSV tables into a prior run directory.
    Export(CommonArgs),
}

#[derive(Args)]
pub struct CommonArgs {
    /// Construction name: lemma2, polygon-tower or box-tower.
    #[arg(long)]
    pub construction: String,
    /// Largest tower index (polygon-tower, in [2, 100]; default 8).
    #[arg(long = "i-max")]
    pub i_max: Option<u64>,
    /// Inclusive integer range "lo,hi" for the index variables.
    #[arg(long = "z-box")]
    pub z_box: Option<String>,
    /// Comma-separated probe selection; defaults to the full suite.
    #[arg(long)]
    pub probes: Option<String>,
    /// Seed for all randomized sampling.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Absolute slack tolerance override (default 1e-9).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Comma-separated outputs: json, csv, svg (construct only).
    #[arg(long)]
    pub format: Option<String>,
}

pub enum CliError {
    /// A selected probe could not run; counts as a verification failure.
    Probe(String),
    Config(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Probe(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Probe(m) | CliError::Config(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Construct(a) => (CommandKind::Construct, a),
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Export(a) => (CommandKind::Export, a),
    };
    let cfg = match RunConfig::new(kind, args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = match kind {
        CommandKind::Construct => construct::run(&cfg),
        CommandKind::Verify => verify::run(&cfg),
        CommandKind::Export => export::run(&cfg),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
