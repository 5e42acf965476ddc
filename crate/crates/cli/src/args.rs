use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gupnl",
    version,
    about = "Roots, entanglement and sampling for the minimal-length momentum algebra",
    after_help = "Exit status: 0 success, 1 i/o, 2 usage, 3 domain, 4 numeric, 5 degenerate state, 6 invariant violation."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Deformation strength β (> 0)
    #[arg(long, global = true, env = "GUPNL_BETA", allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Reduced Planck constant
    #[arg(long, global = true, env = "GUPNL_HBAR", default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,

    /// Master seed for sampling
    #[arg(long, global = true, env = "GUPNL_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, env = "GUPNL_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Significant digits in emitted numbers (6 to 17)
    #[arg(
        long,
        global = true,
        env = "GUPNL_PRECISION",
        default_value_t = 12,
        value_parser = clap::value_parser!(u32).range(6..=17)
    )]
    pub precision: u32,

    /// Write output here instead of stdout
    #[arg(long, global = true, env = "GUPNL_OUT")]
    pub out: Option<PathBuf>,

    /// key=value file consulted for settings given neither as flags nor in the environment
    #[arg(long, global = true, env = "GUPNL_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve βp³ + p − P = 0 with both solvers and report residuals
    Roots {
        #[arg(long = "P", allow_negative_numbers = true)]
        p: f64,
    },
    /// Tabulate the three roots over an evenly spaced P range
    Scan {
        #[arg(long = "P-min", allow_negative_numbers = true)]
        p_min: f64,
        #[arg(long = "P-max", allow_negative_numbers = true)]
        p_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        steps: i64,
    },
    /// Build the zero-total-momentum pair state and report its entanglement
    Entangle {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Draw correlated outcome pairs from the pair state
    Sample {
        #[command(flatten)]
        state: StateArgs,
        /// Number of draws
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Emit only the real part of each outcome
        #[arg(long)]
        real_part_only: bool,
    },
    /// Tabulate Δx(ΔP) and compare analytic and numeric minimal lengths
    Uncertainty {
        /// START:STOP:COUNT, all positive
        #[arg(long, default_value = "0.01:100:41", allow_hyphen_values = true)]
        grid: String,
        /// Space the grid linearly instead of logarithmically
        #[arg(long)]
        linear: bool,
    },
    /// Follow the roots along a decreasing β ladder
    Limit {
        #[arg(long = "P", allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        decades: i64,
        /// Ladder points per decade
        #[arg(long, default_value_t = 1)]
        per_decade: u32,
    },
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: f64,
    /// Three complex coefficients, e.g. "0.7071,0.5,0.5i" (default uniform)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Defaults to alpha
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
}
