use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use taxsim_core::PolicyKind;
use taxsim_nsga2::{GaConfig, MutationKind};

#[derive(Debug, Parser)]
#[command(name = "taxsim", version, about = "Carbon-tax policy simulation and multi-objective optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one policy through the market simulator.
    Simulate(SimulateArgs),
    /// Search for Pareto-optimal carbon-tax trajectories with NSGA-II.
    Optimize(OptimizeArgs),
    /// Run the optimizer on an analytic test problem.
    Benchmark(BenchmarkArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output directory.
    #[arg(long, env = "TAXSIM_OUT_DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario file, or the name of a bundled scenario.
    #[arg(long, default_value = "uk_synthetic")]
    pub scenario: String,
    /// `flat:C`, `linear:A1,A2` or `free:V1,...,V18` (£/tCO2).
    #[arg(long)]
    pub policy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct GaArgs {
    /// Population size (even, at least 4).
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    /// Number of generations after the initial population.
    #[arg(long, default_value_t = 20)]
    pub gens: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.9)]
    pub crossover_prob: f64,
    #[arg(long, default_value_t = 0.05)]
    pub mutation_prob: f64,
    /// SBX distribution index.
    #[arg(long, default_value_t = 15.0)]
    pub eta_c: f64,
    /// Polynomial mutation distribution index.
    #[arg(long, default_value_t = 20.0)]
    pub eta_m: f64,
    /// per-gene, per-child or polynomial.
    #[arg(long)]
    pub mutation_kind: Option<MutationKind>,
    /// Worker threads for fitness evaluation (default: logical CPUs).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl GaArgs {
    pub fn config(&self, default_mutation: MutationKind) -> GaConfig {
        GaConfig {
            population_size: self.pop,
            generations: self.gens,
            crossover_probability: self.crossover_prob,
            mutation_probability: self.mutation_prob,
            eta_c: self.eta_c,
            eta_m: self.eta_m,
            mutation_kind: self.mutation_kind.unwrap_or(default_mutation),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, default_value = "uk_synthetic")]
    pub scenario: String,
    /// free (one price per year) or linear (slope and intercept).
    #[arg(long)]
    pub kind: PolicyKind,
    #[command(flatten)]
    pub ga: GaArgs,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// schaffer or zdt1.
    #[arg(long)]
    pub problem: String,
    #[command(flatten)]
    pub ga: GaArgs,
    /// Exit non-zero when the generational distance exceeds this value.
    #[arg(long)]
    pub fail_above: Option<f64>,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Path to a manifest.json written by an earlier run.
    pub manifest: PathBuf,
    /// Output directory (default: the directory holding the manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; does not affect results.
    #[arg(long)]
    pub jobs: Option<usize>,
}
