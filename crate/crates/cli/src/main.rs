//! `momineq`: randomization and bootstrap tests of moment inequalities, and
//! Monte Carlo reproduction of the reference simulation tables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momineq::simulation::SelectionMode;
use serde::{Deserialize, Serialize};

mod commands;
mod data;
mod output;

#[derive(Parser)]
#[command(
    name = "momineq",
    version,
    about = "Exact tests of many moment inequalities"
)]
struct Cli {
    /// Worker threads (default: all available cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Test H0: mu <= 0 on a CSV data file (rows are observations).
    Test(TestArgs),
    /// Run one simulation cell.
    Simulate(SimulateArgs),
    /// Run the cells of a reference table and compare with the published rates.
    Reproduce(ReproduceArgs),
    /// Re-run the command recorded in a manifest.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticArg {
    Tmax,
    TmaxIota,
    Tplus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    /// Symmetry (sign-flip) randomization.
    Sr,
    /// Empirical bootstrap.
    Eb,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct TestArgs {
    /// CSV file, one observation per row.
    pub data: PathBuf,
    /// Treat the first CSV row as a header.
    #[arg(long)]
    pub header: bool,
    #[arg(long, value_enum, default_value_t = StatisticArg::Tmax)]
    pub statistic: StatisticArg,
    /// CSV of non-negative direction vectors (one per row); overrides --statistic.
    #[arg(long)]
    pub directions: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Sr)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Number of reflections, including the identity.
    #[arg(long = "reflections", short = 'M', default_value_t = 1000)]
    pub reflections: usize,
    /// Number of bootstrap resamples.
    #[arg(long = "bootstrap", short = 'B', default_value_t = 1000)]
    pub bootstrap: usize,
    /// Drop clearly slack inequalities using a bootstrap cutoff before testing.
    #[arg(long)]
    pub select: bool,
    /// Level of the selection step.
    #[arg(long, default_value_t = 0.001)]
    pub beta: f64,
    #[arg(long, env = "MOMINEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    /// Mean design, 1 to 4.
    #[arg(long, default_value = "1")]
    pub design: String,
    /// `t4` or `skewnormal:<gamma>`.
    #[arg(long, default_value = "t4")]
    pub dist: String,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    /// Comma-separated test labels, e.g. `sr-tmax,eb-tmax,sr-tplus-sel`.
    #[arg(long, default_value = "sr-tmax")]
    pub tests: String,
    #[arg(long = "reflections", short = 'M', default_value_t = 1000)]
    pub reflections: usize,
    #[arg(long = "bootstrap", short = 'B', default_value_t = 1000)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, env = "MOMINEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// How SR tests with selection pick columns: per-reflection (exact),
    /// fixed-cutoff or observed-set (both faster, not exact).
    #[arg(long, default_value = "per-reflection")]
    pub selection: SelectionMode,
    /// Output directory.
    #[arg(long, default_value = "momineq-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ReproduceArgs {
    /// Table number, 1 to 5.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub table: u8,
    /// Cell filter such as `n=30,p=200,rho=0.5`.
    #[arg(long)]
    pub cells: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long = "reflections", short = 'M', default_value_t = 1000)]
    pub reflections: usize,
    #[arg(long = "bootstrap", short = 'B', default_value_t = 1000)]
    pub bootstrap: usize,
    #[arg(long, env = "MOMINEQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// How SR tests with selection pick columns: per-reflection (exact),
    /// fixed-cutoff or observed-set (both faster, not exact).
    #[arg(long, default_value = "per-reflection")]
    pub selection: SelectionMode,
    #[arg(long, default_value = "momineq-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Write outputs here instead of the recorded location.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
