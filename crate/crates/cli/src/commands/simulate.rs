use std::fmt::Write;

use taxsim_core::{run_simulation, CarbonPolicy, PolicyKind, Scenario, SimulationResult};

use super::Outcome;
use crate::error::{CliError, Result};
use crate::output::{csv_bytes, num, OutputSet};

/// Rejects policies that cannot cover the scenario's horizon.
pub fn check(s: &Scenario, policy: &CarbonPolicy) -> Result<()> {
    policy.validate().map_err(CliError::validation)?;
    check_horizon(s, policy.kind())
}

pub(crate) fn check_horizon(s: &Scenario, kind: PolicyKind) -> Result<()> {
    let genes = kind.genes();
    if kind == PolicyKind::NonParametric && (s.horizon_years as usize) > genes {
        return Err(CliError::Validation(format!(
            "a free policy sets {genes} yearly prices but the scenario runs {} years",
            s.horizon_years
        )));
    }
    Ok(())
}

pub fn run(s: &Scenario, policy: &CarbonPolicy, seed: u64) -> Result<Outcome> {
    let result = run_simulation(s, policy, seed).map_err(CliError::runtime)?;
    let mut files = OutputSet::default();
    files.add("years.csv", years_csv(s, &result));
    files.add("energy.csv", energy_csv(&result));
    files.add("events.csv", events_csv(&result));
    files.add("objectives.csv", objectives_csv(s, policy, seed, &result));
    Ok(Outcome { files, summary: summary(s, &result), verdict: None })
}

fn years_csv(s: &Scenario, r: &SimulationResult) -> Vec<u8> {
    let header = [
        "year", "year_index", "carbon_price", "average_price", "demand_mwh", "served_mwh",
        "unserved_mwh", "emissions_t", "carbon_intensity", "relative_carbon_intensity",
    ];
    let rows = r.per_year.iter().enumerate().map(|(i, y)| {
        vec![
            y.year.to_string(),
            (i + 1).to_string(),
            num(y.carbon_price),
            num(y.average_price),
            num(y.demand_mwh),
            num(y.served_mwh),
            num(y.unserved_mwh),
            num(y.emissions_t),
            num(y.carbon_intensity),
            num(y.carbon_intensity / s.base_intensity()),
        ]
    });
    csv_bytes(&header.map(String::from), rows)
}

fn energy_csv(r: &SimulationResult) -> Vec<u8> {
    let header = ["year", "technology", "energy_mwh", "share"].map(String::from);
    let mut rows = Vec::new();
    for y in &r.per_year {
        for (tech, &mwh) in &y.energy_by_technology {
            let share = if y.served_mwh > 0.0 { mwh / y.served_mwh } else { 0.0 };
            rows.push(vec![y.year.to_string(), tech.clone(), num(mwh), num(share)]);
        }
    }
    csv_bytes(&header, rows)
}

fn events_csv(r: &SimulationResult) -> Vec<u8> {
    let header = ["year", "kind", "genco", "technology", "unit_count", "npv"].map(String::from);
    let rows = r.events.iter().map(|e| {
        vec![
            e.year.to_string(),
            e.kind.as_str().to_string(),
            e.genco.clone(),
            e.technology.clone(),
            e.unit_count.to_string(),
            e.npv.map(num).unwrap_or_default(),
        ]
    });
    csv_bytes(&header, rows)
}

fn objectives_csv(s: &Scenario, policy: &CarbonPolicy, seed: u64, r: &SimulationResult) -> Vec<u8> {
    let header = ["final_year", "policy_kind", "genome", "seed", "objective_price", "objective_rci"].map(String::from);
    let genome: Vec<String> = policy.encode().into_iter().map(num).collect();
    let row = vec![
        s.final_year().to_string(),
        policy.kind().name().to_string(),
        genome.join(";"),
        seed.to_string(),
        num(r.objective_price),
        num(r.objective_rci),
    ];
    csv_bytes(&header, [row])
}

fn summary(s: &Scenario, r: &SimulationResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>6} {:>10} {:>12} {:>10} {:>8} {:>12}", "year", "carbon", "price", "t/MWh", "rci", "unserved");
    for y in &r.per_year {
        let _ = writeln!(
            out,
            "{:>6} {:>10.2} {:>12.2} {:>10.4} {:>8.4} {:>12.0}",
            y.year,
            y.carbon_price,
            y.average_price,
            y.carbon_intensity,
            y.carbon_intensity / s.base_intensity(),
            y.unserved_mwh
        );
    }
    let _ = writeln!(out, "objective_price {} £/MWh", num(r.objective_price));
    let _ = writeln!(out, "objective_rci   {}", num(r.objective_rci));
    out
}
