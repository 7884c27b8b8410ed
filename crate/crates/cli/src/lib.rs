//! Command-line front end: scenario loading, policy simulation, NSGA-II
//! optimization and benchmark runs, each writing CSV/JSON outputs and a
//! manifest that reproduces them.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;

use std::path::PathBuf;

use taxsim_core::parse_policy_spec;
use taxsim_nsga2::MutationKind;

use crate::args::{Cli, Command};
use crate::error::{CliError, Result};
use crate::manifest::{RunConfig, RunManifest};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => {
            let policy = parse_policy_spec(&a.policy).map_err(CliError::validation)?;
            let (_, scenario) = manifest::resolve_scenario(&a.scenario)?;
            let config = RunConfig::Simulate { scenario, policy, seed: a.seed };
            commands::execute(&config, Some(1), &a.out.out)
        }
        Command::Optimize(a) => {
            let (_, scenario) = manifest::resolve_scenario(&a.scenario)?;
            let ga = a.ga.config(MutationKind::PerGene);
            let config = RunConfig::Optimize { scenario, kind: a.kind, ga };
            commands::execute(&config, a.ga.jobs, &a.out.out)
        }
        Command::Benchmark(a) => {
            // Uniform reset is too disruptive for 30-variable problems.
            let ga = a.ga.config(MutationKind::Polynomial);
            let config = RunConfig::Benchmark { problem: a.problem, ga, fail_above: a.fail_above };
            commands::execute(&config, a.ga.jobs, &a.out.out)
        }
        Command::Replay(a) => {
            let recorded = RunManifest::load(&a.manifest)?;
            let out = a.out.unwrap_or_else(|| match a.manifest.parent() {
                Some(dir) if !dir.as_os_str().is_empty() => dir.to_path_buf(),
                _ => PathBuf::from("."),
            });
            commands::execute(&recorded.config, a.jobs, &out)
        }
    }
}
