pub mod benchmark;
pub mod optimize;
pub mod simulate;

use std::path::Path;
use std::time::Instant;

use crate::error::{CliError, Result};
use crate::manifest::{self, RunConfig, RunManifest, Timings};
use crate::output::OutputSet;

/// What a command produced: files to write, text for the terminal, and an
/// optional failure to report once the files are safely on disk.
pub struct Outcome {
    pub files: OutputSet,
    pub summary: String,
    pub verdict: Option<CliError>,
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(CliError::Validation("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(CliError::runtime)
}

/// Runs a resolved configuration and writes its outputs plus a manifest
/// into `out`.
pub fn execute(config: &RunConfig, jobs: Option<usize>, out: &Path) -> Result<()> {
    let started = Instant::now();
    let pool = thread_pool(jobs)?;
    let outcome = match config {
        RunConfig::Simulate { scenario, policy, seed } => {
            let s = manifest::reload_scenario(scenario)?;
            simulate::check(&s, policy)?;
            pool.install(|| simulate::run(&s, policy, *seed))?
        }
        RunConfig::Optimize { scenario, kind, ga } => {
            let s = manifest::reload_scenario(scenario)?;
            optimize::check(&s, *kind, ga)?;
            pool.install(|| optimize::run(&s, *kind, ga))?
        }
        RunConfig::Benchmark { problem, ga, fail_above } => {
            let p = benchmark::check(problem, ga)?;
            pool.install(|| benchmark::run(p.as_ref(), ga, *fail_above))?
        }
    };
    let compute_seconds = started.elapsed().as_secs_f64();

    let Outcome { mut files, summary, verdict } = outcome;
    let names = files.names();
    let timings = Timings { compute_seconds, total_seconds: started.elapsed().as_secs_f64() };
    let record = RunManifest::new(config.clone(), pool.current_num_threads(), names, timings);
    files.add_json(manifest::FILE_NAME, &record);
    files.write(out)?;

    print!("{summary}");
    println!("outputs written to {}", out.display());
    match verdict {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
