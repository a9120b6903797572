//! Command-line front end: parse a run config, dispatch the requested
//! command, and emit machine-readable CSV plus a human-readable summary.

mod commands;
mod config;
mod csvout;

use clap::Parser;

use crate::config::ConfigError;

/// Exit status categories.
pub const STATUS_PARSE: i32 = 2;
pub const STATUS_NUMERICS: i32 = 3;
pub const STATUS_INVARIANT: i32 = 4;
pub const STATUS_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "vexmem",
    about = "Solver harness for evolution equations with variable-exponent memory kernels",
    version
)]
struct Cli {
    /// Path to the key = value run configuration.
    #[arg(long)]
    config: std::path::PathBuf,

    /// CSV output path; overrides the `out` config key.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Seed for randomized commands; overrides the `seed` config key.
    #[arg(long)]
    seed: Option<u64>,

    /// Print per-step details to stderr.
    #[arg(long)]
    verbose: bool,
}

/// Harness-level error with its exit status category.
#[derive(Debug)]
pub struct HarnessError {
    pub status: i32,
    pub category: &'static str,
    pub message: String,
}

impl HarnessError {
    fn new(status: i32, category: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            category,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(STATUS_PARSE, "parse", message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(STATUS_IO, "io", message)
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Self::new(STATUS_INVARIANT, "invariant", message)
    }

    pub fn numerics(message: impl Into<String>) -> Self {
        Self::new(STATUS_NUMERICS, "numerics", message)
    }
}

impl From<ConfigError> for HarnessError {
    fn from(e: ConfigError) -> Self {
        HarnessError::parse(e.to_string())
    }
}

impl From<vexmem::Error> for HarnessError {
    fn from(e: vexmem::Error) -> Self {
        use vexmem::Error::*;
        let root_status = |err: &vexmem::Error| match err {
            Domain(_) | InvalidInput(_) => STATUS_PARSE,
            Accuracy { .. } | NonConvergence { .. } | Resolution(_) => STATUS_NUMERICS,
            Mode { .. } => STATUS_NUMERICS,
        };
        let status = match &e {
            Mode { source, .. } => root_status(source),
            other => root_status(other),
        };
        let category = if status == STATUS_PARSE {
            "parse"
        } else {
            "numerics"
        };
        HarnessError::new(status, category, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: category={} {}", e.category, e.message);
            std::process::exit(e.status);
        }
    }
}

fn run(cli: &Cli) -> Result<(), HarnessError> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| HarnessError::io(format!("cannot read {}: {e}", cli.config.display())))?;
    let mut raw = config::RawConfig::parse(&text)?;
    if let Some(seed) = cli.seed {
        raw.override_seed(seed);
    }
    if let Some(out) = &cli.out {
        raw.override_out(out.clone());
    }
    commands::dispatch(raw, cli.verbose)
}
