//! Merit-order clearing of the spot market.
//!
//! Plants bid their short-run marginal cost; bids are stacked cheapest first
//! (ties: lower emission factor, then lower plant id) and filled until demand
//! is met. Every dispatched unit is paid the uniform clearing price set by the
//! last unit used. Demand is inelastic: if the stack runs out, the remainder
//! is unserved and the price is the scenario's loss-of-load price.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{Availability, PowerPlant, Scenario, Segment, Technology};

/// Short-run marginal cost in £/MWh: fuel / efficiency + variable O&M +
/// emission factor × carbon price. A negative carbon price acts as a subsidy.
pub fn srmc(tech: &Technology, fuel_price: f64, carbon_price: f64) -> f64 {
    let fuel = if tech.fuel_kind.is_some() { fuel_price / tech.efficiency } else { 0.0 };
    fuel + tech.variable_om + tech.emission_factor * carbon_price
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bid {
    pub plant_id: u32,
    /// Index into the scenario's technology catalog.
    pub technology: usize,
    pub available_mw: f64,
    pub srmc: f64,
    pub emission_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentClearing {
    /// `(plant id, MW)` for every plant with non-zero output, in merit order.
    pub dispatched: Vec<(u32, f64)>,
    pub clearing_price: f64,
    pub unserved_mw: f64,
}

impl SegmentClearing {
    pub fn served_mw(&self) -> f64 {
        self.dispatched.iter().map(|&(_, mw)| mw).sum()
    }
}

/// Outcome of one simulated year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YearResult {
    pub year: i32,
    pub carbon_price: f64,
    /// MWh per technology name; every catalog technology is present.
    pub energy_by_technology: BTreeMap<String, f64>,
    pub emissions_t: f64,
    /// Demand-weighted mean clearing price, £/MWh.
    pub average_price: f64,
    pub demand_mwh: f64,
    pub served_mwh: f64,
    pub unserved_mwh: f64,
    /// tCO2 per served MWh (0 when nothing is served).
    pub carbon_intensity: f64,
}

fn tech_srmc(tech: &Technology, year: i32, carbon_price: f64, s: &Scenario) -> Result<f64> {
    let fuel_price = match &tech.fuel_kind {
        Some(fuel) => s.fuel_price(fuel, year)?,
        None => 0.0,
    };
    Ok(srmc(tech, fuel_price, carbon_price))
}

/// One bid per plant for a single segment. Every plant must be operating in
/// `year`.
pub fn build_bids(
    fleet: &[PowerPlant],
    year: i32,
    segment: &Segment,
    carbon_price: f64,
    s: &Scenario,
) -> Result<Vec<Bid>> {
    let mut bids = firm_bids(fleet, year, carbon_price, s)?;
    for bid in &mut bids {
        bid.available_mw *= segment.capacity_factor(s.technologies[bid.technology].availability);
    }
    Ok(bids)
}

/// Bids at full nameplate capacity; availability scaling happens per segment.
fn firm_bids(fleet: &[PowerPlant], year: i32, carbon_price: f64, s: &Scenario) -> Result<Vec<Bid>> {
    let mut srmc_cache: Vec<Option<f64>> = vec![None; s.technologies.len()];
    fleet
        .iter()
        .map(|plant| {
            let idx = s.technology_index(&plant.technology)?;
            let tech = &s.technologies[idx];
            if !plant.is_active(tech, year) {
                return Err(Error::InactivePlant { id: plant.id, year });
            }
            let cost = match srmc_cache[idx] {
                Some(c) => c,
                None => {
                    let c = tech_srmc(tech, year, carbon_price, s)?;
                    srmc_cache[idx] = Some(c);
                    c
                }
            };
            Ok(Bid {
                plant_id: plant.id,
                technology: idx,
                available_mw: tech.capacity_mw * plant.unit_count as f64,
                srmc: cost,
                emission_factor: tech.emission_factor,
            })
        })
        .collect()
}

fn merit_cmp(a: &Bid, b: &Bid) -> Ordering {
    a.srmc
        .total_cmp(&b.srmc)
        .then(a.emission_factor.total_cmp(&b.emission_factor))
        .then(a.plant_id.cmp(&b.plant_id))
}

/// Clears one segment by merit order.
pub fn clear_segment(demand_mw: f64, bids: &[Bid], loss_of_load_price: f64) -> SegmentClearing {
    let mut order: Vec<&Bid> = bids.iter().collect();
    order.sort_by(|a, b| merit_cmp(a, b));
    let mut takes = vec![0.0; order.len()];
    let (price, unserved) = fill(demand_mw, order.iter().map(|b| (b.available_mw, b.srmc)), &mut takes, loss_of_load_price);
    let dispatched = order
        .iter()
        .zip(&takes)
        .filter(|(_, &mw)| mw > 0.0)
        .map(|(b, &mw)| (b.plant_id, mw))
        .collect();
    SegmentClearing { dispatched, clearing_price: price, unserved_mw: unserved }
}

/// Greedy fill over `(available, srmc)` pairs already in merit order. Writes
/// each unit's output into `takes` and returns `(price, unserved)`.
fn fill(
    demand_mw: f64,
    stack: impl Iterator<Item = (f64, f64)>,
    takes: &mut [f64],
    loss_of_load_price: f64,
) -> (f64, f64) {
    let mut remaining = demand_mw;
    let mut price = None;
    for (slot, (available, cost)) in takes.iter_mut().zip(stack) {
        if remaining <= 0.0 {
            *slot = 0.0;
            continue;
        }
        let take = available.max(0.0).min(remaining);
        *slot = take;
        if take > 0.0 {
            remaining -= take;
            price = Some(cost);
        }
    }
    if remaining > 0.0 {
        (loss_of_load_price, remaining)
    } else {
        (price.unwrap_or(loss_of_load_price), 0.0)
    }
}

/// Per-plant results alongside the aggregate year outcome.
#[derive(Debug, Clone)]
pub(crate) struct YearDispatch {
    pub result: YearResult,
    /// Σ (clearing price − SRMC) × MWh per plant, £, index-aligned with the
    /// fleet passed in.
    pub plant_margin: Vec<f64>,
}

/// Clears every segment of every representative day for `year` with demand
/// scaled by the scenario's cumulative growth.
pub fn run_year(fleet: &[PowerPlant], year: i32, carbon_price: f64, s: &Scenario) -> Result<YearResult> {
    Ok(dispatch_year(fleet, year, carbon_price, 1.0, s)?.result)
}

pub(crate) fn dispatch_year(
    fleet: &[PowerPlant],
    year: i32,
    carbon_price: f64,
    demand_multiplier: f64,
    s: &Scenario,
) -> Result<YearDispatch> {
    let bids = firm_bids(fleet, year, carbon_price, s)?;
    // Position in `fleet` travels with each bid through the sort.
    let mut order: Vec<usize> = (0..bids.len()).collect();
    order.sort_by(|&a, &b| merit_cmp(&bids[a], &bids[b]));
    let firm: Vec<f64> = order.iter().map(|&i| bids[i].available_mw).collect();
    let availability: Vec<Availability> =
        order.iter().map(|&i| s.technologies[bids[i].technology].availability).collect();
    let costs: Vec<f64> = order.iter().map(|&i| bids[i].srmc).collect();

    let factor = s.demand_factor(year) * demand_multiplier;
    let n = bids.len();
    let mut takes = vec![0.0; n];
    let mut energy = vec![0.0; n];
    let mut margin = vec![0.0; n];
    let (mut demand_mwh, mut unserved_mwh, mut price_weighted) = (0.0, 0.0, 0.0);

    for day in &s.representative_days {
        for seg in &day.segments {
            let hours = seg.duration_hours * day.weight_days;
            let demand = seg.demand_mw * factor;
            let stack = (0..n).map(|k| (firm[k] * seg.capacity_factor(availability[k]), costs[k]));
            let (price, unserved) = fill(demand, stack, &mut takes, s.loss_of_load_price);
            for k in 0..n {
                if takes[k] > 0.0 {
                    let mwh = takes[k] * hours;
                    energy[k] += mwh;
                    margin[k] += (price - costs[k]) * mwh;
                }
            }
            demand_mwh += demand * hours;
            unserved_mwh += unserved * hours;
            price_weighted += price * demand * hours;
        }
    }

    let mut plant_margin = vec![0.0; n];
    let mut energy_by_technology: BTreeMap<String, f64> =
        s.technologies.iter().map(|t| (t.name.clone(), 0.0)).collect();
    let mut emissions_t = 0.0;
    let mut served_mwh = 0.0;
    for (k, &i) in order.iter().enumerate() {
        plant_margin[i] = margin[k];
        let tech = &s.technologies[bids[i].technology];
        *energy_by_technology.get_mut(&tech.name).expect("catalog entry") += energy[k];
        emissions_t += energy[k] * tech.emission_factor;
        served_mwh += energy[k];
    }

    let carbon_intensity = if served_mwh > 0.0 { emissions_t / served_mwh } else { 0.0 };
    let average_price = if demand_mwh > 0.0 { price_weighted / demand_mwh } else { 0.0 };
    Ok(YearDispatch {
        result: YearResult {
            year,
            carbon_price,
            energy_by_technology,
            emissions_t,
            average_price,
            demand_mwh,
            served_mwh,
            unserved_mwh,
            carbon_intensity,
        },
        plant_margin,
    })
}

/// Carbon intensity of the start-year fleet dispatched at zero carbon price.
pub(crate) fn start_year_intensity(s: &Scenario) -> Result<f64> {
    let fleet: Vec<PowerPlant> = s
        .initial_fleet
        .iter()
        .filter(|p| s.technology(&p.technology).map(|t| p.is_active(t, s.start_year)).unwrap_or(false))
        .cloned()
        .collect();
    Ok(run_year(&fleet, s.start_year, 0.0, s)?.carbon_intensity)
}
