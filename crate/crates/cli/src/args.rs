use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eur_core::bounds::INEQUALITY_TOL;
use eur_core::sweep::DEFAULT_STEPS;

/// Entropic uncertainty bounds with quantum memory: sweeps, state evaluation, fuzzing and
/// complementarity constants.
#[derive(Debug, Parser)]
#[command(name = "eur", version, about, long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate U, L1 and L2 over a state family and emit one row per grid point
    Sweep(SweepArgs),
    /// Print every uncertainty and bound value for one state as JSON
    Bound(BoundArgs),
    /// Check all inequalities and identities on seeded random states
    Verify(VerifyArgs),
    /// Print complementarity constants for a set of measurements
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// State family: werner or wstate
    #[arg(long, default_value = "werner")]
    pub family: String,

    /// First grid value; defaults to 0
    #[arg(long, allow_negative_numbers = true)]
    pub param_start: Option<f64>,

    /// Last grid value; defaults to 1 for werner and π for wstate
    #[arg(long, allow_negative_numbers = true)]
    pub param_end: Option<f64>,

    #[arg(long, default_value_t = DEFAULT_STEPS)]
    pub steps: usize,

    /// 1: x, y guessed by B and z by C. 2: x by B and y, z by C
    #[arg(long, default_value_t = 1)]
    pub case: u32,

    /// Relative phase of the wstate family; defaults to π/4
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,

    /// Write rows here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Inequality tolerance
    #[arg(long, default_value_t = INEQUALITY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// State file (JSON), or one of ghz, mixed, werner:P, wstate:THETA[:PHI]
    #[arg(long)]
    pub state: String,

    /// pauli-xyz, a comma-separated list of Pauli labels, or a basis file (JSON)
    #[arg(long, default_value = "pauli-xyz")]
    pub measurements: String,

    /// Memory assignment such as "B:x,y;C:z"
    #[arg(long, conflicts_with = "case")]
    pub partition: Option<String>,

    /// Shorthand for the Pauli partitions: 1 is "B:x,y;C:z", 2 is "B:x;C:y,z"
    #[arg(long)]
    pub case: Option<u32>,

    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, default_value_t = INEQUALITY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: usize,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Subsystem dimensions of A, B, C
    #[arg(long, default_value = "2,2,2")]
    pub dims: String,

    /// Inequality tolerance; identities use the smaller of this and 1e-9
    #[arg(long, default_value_t = INEQUALITY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// pauli-xyz, a comma-separated list of Pauli labels, or a basis file (JSON)
    #[arg(long, default_value = "pauli-xyz")]
    pub measurements: String,

    /// State for the probabilities in ℓ; multipartite states are reduced to subsystem A.
    /// Defaults to the maximally mixed state
    #[arg(long)]
    pub state: Option<String>,
}
