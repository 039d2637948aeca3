mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Exact and Monte Carlo determinantal moments of random two-qubit and
/// two-rebit density matrices.
#[derive(Parser, Debug, Serialize)]
#[command(name = "detmoments", version)]
pub struct Cli {
    /// Worker threads for Monte Carlo runs (default: all cores).
    #[arg(long, global = true, env = "DETMOMENTS_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Exact moments from the closed forms.
    Exact(ExactArgs),
    /// Monte Carlo moment grid and ratio table against exact HS moments.
    Mc(McArgs),
    /// Eigenvalue-simplex quadrature.
    Quad(QuadArgs),
    /// Fit a rational function to exact sequence points.
    Fit(FitArgs),
    /// Separability probability from a moment sequence.
    Sepprob(SepprobArgs),
    /// Quick internal consistency checks.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MeasureArg {
    Hs,
    Bures,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VariantArg {
    TwoQubit,
    TwoRebit,
    Retrit,
}

#[derive(Args, Debug, Serialize)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Dyson parameter for HS formulas, e.g. `1`, `1/2`, `2`.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Emit the whole grid `0..=N × 0..=K` as CSV instead of one value.
    #[arg(long, value_name = "N,K")]
    pub grid: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_name = "N,K", default_value = "24,24")]
    pub grid: String,
    #[arg(long, default_value_t = 10_000)]
    pub chunk_size: u64,
    /// Ratio-table CSV path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON path (default: stderr).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MissingArg {
    L53,
    L62,
    L71,
    L8,
}

#[derive(Args, Debug, Serialize)]
pub struct QuadArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    /// Eigenvalue exponents, e.g. `4,0,0,0`.
    #[arg(long, conflicts_with_all = ["missing", "normalization"])]
    pub pattern: Option<String>,
    /// One of the two-rebit families without a closed form, against `|ρ|^k`.
    #[arg(long, value_enum, conflicts_with = "normalization")]
    pub missing: Option<MissingArg>,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Compute the density's normalization constant.
    #[arg(long)]
    pub normalization: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FitArgs {
    /// CSV with header `k,numerator,denominator`.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub deg_num: usize,
    #[arg(long)]
    pub deg_den: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SepprobArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 128)]
    pub order: usize,
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
    /// Apply Jackson damping to the expansion.
    #[arg(long)]
    pub jackson: bool,
    /// Write `(x, f(x))` on an equally spaced grid to this CSV.
    #[arg(long)]
    pub density_out: Option<PathBuf>,
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Monte Carlo samples for Bures moments.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
