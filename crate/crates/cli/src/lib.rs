//! Command-line front end for marked Margulis-Smilga spectra of affine
//! representations into `PSL(n, R) x sl(n, R)`.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod check;
pub mod commands;
pub mod output;
pub mod spec_file;

pub use spec_file::{load_rep, RepSpecFile};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 2;
    pub const NOT_LOXODROMIC: i32 = 3;
    pub const MODEL_MISMATCH: i32 = 4;
    pub const LINEAR_PARTS_DIFFER: i32 = 5;
    pub const Q_EQUAL_ONLY: i32 = 10;
    pub const DIFFER: i32 = 11;
    pub const NO_COBOUNDARY: i32 = 12;
    pub const NOT_CERTIFIED: i32 = 13;
    pub const CHECK_FAILED: i32 = 14;
}

#[derive(Debug, Parser)]
#[command(name = "margulis", version, about = "Marked Margulis-Smilga spectra of affine representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Marked spectrum on all reduced words up to the maximal length.
    Spectrum {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the marked spectra of two representations.
    Compare {
        spec1: PathBuf,
        spec2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the translation part is a coboundary and recover it.
    Coboundary {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Recover a translation conjugator between two representations with
    /// the same linear parts.
    Certify {
        spec1: PathBuf,
        spec2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the numerical property suite on a spec or a generated
    /// representation.
    Check {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        spec: Option<PathBuf>,
        /// Generate a representation with K generators in PSL(N, R).
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        random: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 4)]
    pub max_word_len: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output format; csv is only available for `spectrum`, its default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add exact rational spot checks where supported.
    #[arg(long)]
    pub rational: bool,
    /// Minimal gap between consecutive log-moduli for loxodromy.
    #[arg(long, default_value_t = 1e-6)]
    pub loxodromy_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command that stops before producing its result.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(exit::INVALID, message)
    }

    pub fn not_loxodromic(message: impl Into<String>) -> Self {
        Self::new(exit::NOT_LOXODROMIC, message)
    }

    pub fn context(self, prefix: &str) -> Self {
        Self {
            code: self.code,
            message: format!("{prefix}: {}", self.message),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Result of a command that ran to completion. `stdout` is the full report;
/// `notes` go to the error stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub notes: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Spectrum { spec, common } => commands::spectrum(spec, common),
        Command::Compare { spec1, spec2, common } => commands::compare(spec1, spec2, common),
        Command::Coboundary { spec, common } => commands::coboundary(spec, common),
        Command::Certify { spec1, spec2, common } => commands::certify(spec1, spec2, common),
        Command::Check { spec, random, common } => {
            commands::check(spec.as_deref(), random.as_deref(), common)
        }
    }
}

/// Caps rayon's global pool at `MARGULIS_THREADS` when set.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("MARGULIS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::invalid(format!("MARGULIS_THREADS: expected a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::invalid(format!("MARGULIS_THREADS: {e}")))
}
