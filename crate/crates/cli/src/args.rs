use clap::{Args, Parser, Subcommand};
use petz::{AlphaOrder, LogBase, DEFAULT_TOL};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "petz", version, about = "Petz-Rényi relative entropies of density operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate D_α(ρ‖σ) for two state files.
    Compute(ComputeArgs),
    /// Evaluate D_α over a grid of orders and emit CSV.
    Scan(ScanArgs),
    /// Check the built-in infinite-dimensional examples against their known verdicts.
    Examples(ExamplesArgs),
    /// Run the seeded property suite.
    Verify(VerifyArgs),
    /// Show the Araki entropy diverging while the trace expression stays 0.
    ArakiDemo(ArakiArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Logarithm base of reported values.
    #[arg(long, env = "PETZ_LOG_BASE", default_value = "e")]
    pub base: LogBase,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    /// Eigenvalues at or below this are outside the support.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Order: a nonnegative number or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: AlphaOrder,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Inclusive grid `a:b:steps`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExamplesArgs {
    #[command(flatten)]
    pub select: ExampleSelect,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ExampleSelect {
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Largest dimension drawn.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_bug: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ArakiArgs {
    /// Number of partial sums.
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    #[arg(long, default_value_t = 5.0)]
    pub threshold: f64,
}
