use std::fmt::Write;

use serde::Serialize;
use taxsim_core::{bounds, decode, evaluate_objectives, PolicyKind, Scenario};
use taxsim_nsga2::{evolve, FrontArchive, GaConfig, Individual};

use super::{median, Outcome};
use crate::error::{CliError, Result};
use crate::output::{csv_bytes, num, OutputSet};

pub fn check(s: &Scenario, kind: PolicyKind, ga: &GaConfig) -> Result<()> {
    ga.validate().map_err(CliError::validation)?;
    super::simulate::check_horizon(s, kind)
}

/// Column names for a genome of `kind`.
pub fn gene_names(s: &Scenario, kind: PolicyKind) -> Vec<String> {
    match kind {
        PolicyKind::Linear => vec!["slope".into(), "intercept".into()],
        PolicyKind::NonParametric => {
            (0..kind.genes()).map(|i| format!("tax_{}", s.start_year + i as i32)).collect()
        }
    }
}

pub fn run(s: &Scenario, kind: PolicyKind, ga: &GaConfig) -> Result<Outcome> {
    let seed = ga.seed;
    let fitness = |genome: &[f64]| evaluate_objectives(s, genome, kind, seed).map(|(p, r)| vec![p, r]);
    let archive = evolve(fitness, &bounds(kind), ga).map_err(CliError::runtime)?;

    let names = gene_names(s, kind);
    let mut files = OutputSet::default();
    files.add("generations.csv", generations_csv(&names, &archive));
    files.add("progress.csv", progress_csv(&archive));
    let front = sorted_front(&archive);
    files.add_json("pareto.json", &pareto(s, kind, names, &front)?);
    Ok(Outcome { files, summary: summary(&archive, &front), verdict: None })
}

fn generations_csv(names: &[String], archive: &FrontArchive) -> Vec<u8> {
    let mut header = vec!["generation".to_string(), "individual".to_string()];
    header.extend(names.iter().cloned());
    header.extend(["objective_price", "objective_rci", "rank", "crowding"].map(String::from));
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
    csv_bytes(&header, rows)
}

fn progress_csv(archive: &FrontArchive) -> Vec<u8> {
    let header = [
        "generation", "min_price", "min_rci", "median_price", "median_rci", "front_size",
    ]
    .map(String::from);
    let rows = archive.generations.iter().map(|snap| {
        let mut price: Vec<f64> = snap.population.iter().map(|i| i.objectives[0]).collect();
        let mut rci: Vec<f64> = snap.population.iter().map(|i| i.objectives[1]).collect();
        let front = snap.population.iter().filter(|i| i.rank == 1).count();
        vec![
            snap.generation.to_string(),
            num(price.iter().copied().fold(f64::INFINITY, f64::min)),
            num(rci.iter().copied().fold(f64::INFINITY, f64::min)),
            num(median(&mut price)),
            num(median(&mut rci)),
            front.to_string(),
        ]
    });
    csv_bytes(&header, rows)
}

/// Final first front ordered by price, then relative intensity.
fn sorted_front(archive: &FrontArchive) -> Vec<Individual> {
    let mut front = archive.final_front.clone();
    front.sort_by(|a, b| {
        a.objectives[0].total_cmp(&b.objectives[0]).then(a.objectives[1].total_cmp(&b.objectives[1]))
    });
    front
}

#[derive(Serialize)]
struct ParetoPoint {
    genome: Vec<f64>,
    objective_price: f64,
    objective_rci: f64,
    /// Carbon price for each simulated year, £/tCO2.
    tax_by_year: Vec<f64>,
}

#[derive(Serialize)]
struct Pareto {
    kind: &'static str,
    genes: Vec<String>,
    years: Vec<i32>,
    front: Vec<ParetoPoint>,
}

fn pareto(s: &Scenario, kind: PolicyKind, genes: Vec<String>, front: &[Individual]) -> Result<Pareto> {
    let years: Vec<i32> = (1..=s.horizon_years).map(|y| s.calendar_year(y)).collect();
    let mut points = Vec::with_capacity(front.len());
    for ind in front {
        let policy = decode(&ind.genome, kind, false).map_err(CliError::runtime)?;
        let tax_by_year = (1..=s.horizon_years as usize)
            .map(|y| policy.price_at(y))
            .collect::<taxsim_core::Result<Vec<f64>>>()
            .map_err(CliError::runtime)?;
        points.push(ParetoPoint {
            genome: ind.genome.clone(),
            objective_price: ind.objectives[0],
            objective_rci: ind.objectives[1],
            tax_by_year,
        });
    }
    Ok(Pareto { kind: kind.name(), genes, years, front: points })
}

fn summary(archive: &FrontArchive, front: &[Individual]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>10} {:>14} {:>12} {:>6}", "generation", "median price", "median rci", "front");
    for snap in &archive.generations {
        let mut price: Vec<f64> = snap.population.iter().map(|i| i.objectives[0]).collect();
        let mut rci: Vec<f64> = snap.population.iter().map(|i| i.objectives[1]).collect();
        let size = snap.population.iter().filter(|i| i.rank == 1).count();
        let _ = writeln!(out, "{:>10} {:>14.3} {:>12.4} {:>6}", snap.generation, median(&mut price), median(&mut rci), size);
    }
    let _ = writeln!(out, "\nfinal front ({} points)", front.len());
    let _ = writeln!(out, "{:>12} {:>10}  genome", "price", "rci");
    for ind in front {
        let genome: Vec<String> = ind.genome.iter().map(|g| format!("{g:.2}")).collect();
        let _ = writeln!(out, "{:>12.3} {:>10.4}  [{}]", ind.objectives[0], ind.objectives[1], genome.join(", "));
    }
    out
}
