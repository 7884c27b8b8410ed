//! The yearly loop: retire, invest, commission, dispatch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dispatch::{dispatch_year, YearResult};
use crate::error::Result;
use crate::investment::invest;
use crate::policy::{decode, CarbonPolicy, PolicyKind};
use crate::scenario::{GenCo, PowerPlant, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Investment,
    Commission,
    Retirement,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Investment => "investment",
            Self::Commission => "commission",
            Self::Retirement => "retirement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationEvent {
    pub year: i32,
    pub kind: EventKind,
    pub genco: String,
    pub technology: String,
    pub unit_count: u32,
    /// NPV at decision time, for investments.
    pub npv: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub per_year: Vec<YearResult>,
    /// Final-year average price, £/MWh.
    pub objective_price: f64,
    /// Final-year carbon intensity over the scenario's base intensity.
    pub objective_rci: f64,
    pub events: Vec<SimulationEvent>,
}

/// Runs the scenario under `policy`. The seed only drives the optional
/// demand jitter; with `demand_jitter = 0` every seed gives the same result.
pub fn run_simulation(s: &Scenario, policy: &CarbonPolicy, seed: u64) -> Result<SimulationResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fleet: Vec<PowerPlant> = s.initial_fleet.clone();
    let mut next_id = fleet.iter().map(|p| p.id + 1).max().unwrap_or(0);
    let mut gencos: Vec<GenCo> = s.gencos.clone();
    gencos.sort_by(|a, b| a.id.cmp(&b.id));

    let mut history: Vec<(i32, f64)> = Vec::with_capacity(s.horizon_years as usize);
    let mut per_year = Vec::with_capacity(s.horizon_years as usize);
    let mut events = Vec::new();

    for index in 1..=s.horizon_years {
        let year = s.calendar_year(index);
        let carbon_price = policy.price_at(index as usize)?;
        history.push((year, carbon_price));
        let jitter: f64 = rng.gen_range(-1.0..=1.0);
        let demand_multiplier = 1.0 + s.demand_jitter * jitter;

        let mut kept = Vec::with_capacity(fleet.len());
        for plant in fleet {
            let tech = s.technology(&plant.technology)?;
            if year >= plant.retire_year(tech) {
                events.push(SimulationEvent {
                    year,
                    kind: EventKind::Retirement,
                    genco: plant.owner.clone(),
                    technology: plant.technology.clone(),
                    unit_count: plant.unit_count,
                    npv: None,
                });
            } else {
                kept.push(plant);
            }
        }
        fleet = kept;

        for genco in &mut gencos {
            for decision in invest(genco, year, s, &fleet, &history)? {
                let tech = s.technology(&decision.technology)?;
                events.push(SimulationEvent {
                    year,
                    kind: EventKind::Investment,
                    genco: decision.genco.clone(),
                    technology: decision.technology.clone(),
                    unit_count: decision.unit_count,
                    npv: Some(decision.npv),
                });
                fleet.push(PowerPlant {
                    id: next_id,
                    technology: decision.technology,
                    owner: decision.genco,
                    commission_year: year + tech.construction_lag_years as i32,
                    unit_count: decision.unit_count,
                });
                next_id += 1;
            }
        }

        let mut active = Vec::with_capacity(fleet.len());
        for plant in &fleet {
            if plant.commission_year == year && plant.id >= s.initial_fleet.len() as u32 {
                events.push(SimulationEvent {
                    year,
                    kind: EventKind::Commission,
                    genco: plant.owner.clone(),
                    technology: plant.technology.clone(),
                    unit_count: plant.unit_count,
                    npv: None,
                });
            }
            if plant.commission_year <= year {
                active.push(plant.clone());
            }
        }

        let outcome = dispatch_year(&active, year, carbon_price, demand_multiplier, s)?;
        if s.investment.reinvest_profits {
            for (plant, margin) in active.iter().zip(&outcome.plant_margin) {
                let tech = s.technology(&plant.technology)?;
                let profit = margin - tech.fixed_om * tech.capacity_mw * plant.unit_count as f64;
                if let Some(owner) = gencos.iter_mut().find(|g| g.id == plant.owner) {
                    owner.budget = (owner.budget + profit).max(0.0);
                }
            }
        }
        per_year.push(outcome.result);
    }

    let last = per_year.last().expect("horizon is at least one year");
    let objective_price = last.average_price;
    let objective_rci = last.carbon_intensity / s.base_intensity();
    Ok(SimulationResult { per_year, objective_price, objective_rci, events })
}

/// Fitness function for the optimizer: decodes `genome` (no repair), runs the
/// simulation and returns `(objective_price, objective_rci)`.
pub fn evaluate_objectives(s: &Scenario, genome: &[f64], kind: PolicyKind, seed: u64) -> Result<(f64, f64)> {
    let policy = decode(genome, kind, false)?;
    let result = run_simulation(s, &policy, seed)?;
    Ok((result.objective_price, result.objective_rci))
}
