use std::convert::Infallible;
use std::fmt::Write;

use serde::Serialize;
use taxsim_nsga2::benchmarks::{self, generational_distance, Problem};
use taxsim_nsga2::{evolve, GaConfig};

use super::Outcome;
use crate::error::{CliError, Result};
use crate::output::{csv_bytes, num, OutputSet};

pub fn check(problem: &str, ga: &GaConfig) -> Result<Box<dyn Problem>> {
    ga.validate().map_err(CliError::validation)?;
    benchmarks::by_name(problem)
        .ok_or_else(|| CliError::Validation(format!("unknown problem `{problem}` (expected schaffer or zdt1)")))
}

#[derive(Serialize)]
struct Report {
    problem: &'static str,
    generational_distance: f64,
    fail_above: Option<f64>,
    front: Vec<FrontPoint>,
}

#[derive(Serialize)]
struct FrontPoint {
    genome: Vec<f64>,
    objectives: Vec<f64>,
}

pub fn run(problem: &dyn Problem, ga: &GaConfig, fail_above: Option<f64>) -> Result<Outcome> {
    let fitness = |x: &[f64]| Ok::<_, Infallible>(problem.evaluate(x));
    let archive = evolve(fitness, &problem.bounds(), ga).map_err(CliError::runtime)?;
    let points: Vec<Vec<f64>> = archive.final_front.iter().map(|i| i.objectives.clone()).collect();
    let gd = generational_distance(problem, &points);

    let vars = problem.bounds().len();
    let mut header = vec!["generation".to_string(), "individual".to_string()];
    header.extend((1..=vars).map(|i| format!("x_{i}")));
    header.extend(["f1", "f2", "rank", "crowding"].map(String::from));
    let mut rows = Vec::new();
    for snap in &archive.generations {
        for (i, ind) in snap.population.iter().enumerate() {
            let mut row = vec![snap.generation.to_string(), i.to_string()];
            row.extend(ind.genome.iter().copied().map(num));
            row.extend(ind.objectives.iter().copied().map(num));
            row.push(ind.rank.to_string());
            row.push(num(ind.crowding));
            rows.push(row);
        }
    }

    let report = Report {
        problem: problem.name(),
        generational_distance: gd,
        fail_above,
        front: archive
            .final_front
            .iter()
            .map(|i| FrontPoint { genome: i.genome.clone(), objectives: i.objectives.clone() })
            .collect(),
    };
    let mut files = OutputSet::default();
    files.add("generations.csv", csv_bytes(&header, rows));
    files.add_json("benchmark.json", &report);

    let mut summary = String::new();
    let _ = writeln!(summary, "problem {}  front {} points", problem.name(), archive.final_front.len());
    let _ = writeln!(summary, "generational distance {}", num(gd));
    let verdict = match fail_above {
        Some(limit) if !(gd <= limit) => Some(CliError::Runtime(format!(
            "generational distance {} exceeds --fail-above {}",
            num(gd),
            num(limit)
        ))),
        _ => None,
    };
    Ok(Outcome { files, summary, verdict })
}
