//! File formats, basis cache and command implementations behind the
//! `spcycles` binary.

pub mod cache;
pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use cache::BasisCache;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
    #[error(transparent)]
    Core(#[from] spcycles_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for a failed exact check, 2 for bad input, 1 for environment failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Check(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "spcycles", version, about = "Exact computations with special cycle classes on orthogonal Shimura varieties")]
pub struct Cli {
    /// Output format (defaults to csv for tables, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for cached Miller bases
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct WeightArgs {
    /// Signature (n, 2); the weight is 1 + n/2
    #[arg(long)]
    pub n: Option<u32>,
    /// Weight k directly (non-physical unless k = 2 mod 4)
    #[arg(long)]
    pub weight: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Eisenstein coefficient and primitive-class identities for m <= M
    Identities {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 200)]
        max_m: u64,
    },
    /// Distance from the ray of each class to the Kahler ray, m = 1..=M
    Converge {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 200)]
        max_m: u64,
        /// Truncation order of the Miller basis (at least M + 1)
        #[arg(long)]
        precision: Option<usize>,
        /// Use the primitive classes P_m (default)
        #[arg(long, conflicts_with = "full")]
        primitive: bool,
        /// Use the full Heegner classes H_m
        #[arg(long)]
        full: bool,
    },
    /// Span dimension, pointedness and extremal rays of the accumulation cone model
    Cone {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 200)]
        max_m: u64,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Lattice utilities for U + U + E8^k
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Gram matrix of the even unimodular lattice of signature (n, 2)
    Build {
        #[arg(long)]
        n: u32,
    },
    /// Moment matrix of a tuple of lattice vectors, given as a JSON array of coordinate rows
    Moment {
        #[arg(long, default_value_t = 10)]
        n: u32,
        #[arg(long)]
        vectors: String,
    },
    /// Reduce a positive definite binary form, given as its doubled matrix 2T in JSON
    Reduce {
        #[arg(long)]
        matrix: String,
    },
    /// The family (j l1, l2) of tuples with a common component
    Family {
        #[arg(long, default_value_t = 10)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 10)]
        j_max: i64,
    },
}

/// Validated parameters shared by the modular-form commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub weight: u32,
    pub n: Option<u32>,
    pub max_m: u64,
    pub precision: usize,
}

impl RunConfig {
    pub fn resolve(
        n: Option<u32>,
        weight: Option<u32>,
        max_m: u64,
        precision: Option<usize>,
    ) -> Result<Self, CliError> {
        let k = match (n, weight) {
            (Some(n), None) => spcycles_core::classes::weight_for_signature(n)
                .map_err(|e| CliError::Usage(format!("--n {n}: {e}")))?,
            (None, Some(k)) if k >= 4 && k % 2 == 0 => k,
            (None, Some(k)) => return Err(CliError::Usage(format!("--weight {k}: expected an even weight of at least 4"))),
            _ => return Err(CliError::Usage("exactly one of --n and --weight is required".into())),
        };
        let need = max_m as usize + 1;
        let precision = precision.unwrap_or(need);
        if precision < need {
            return Err(CliError::Usage(format!(
                "precision {precision} is too small for --max-m {max_m}: need at least {need}"
            )));
        }
        Ok(Self {
            weight: k,
            n,
            max_m,
            precision,
        })
    }

    /// Weights attached to even unimodular lattices of signature (n, 2) satisfy
    /// `n ≡ 2 (mod 8)`, i.e. `k ≡ 2 (mod 4)`.
    pub fn is_physical(&self) -> bool {
        self.weight % 4 == 2
    }
}
