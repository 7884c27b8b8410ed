//! GenCo investment by net present value.
//!
//! Each year every GenCo projects the carbon price with an ordinary
//! least-squares line through the prices seen so far, simulates the market
//! `lookahead_years` ahead with each candidate technology added, and treats
//! the candidate's simulated operating margin as a constant yearly cash flow
//! over its lifetime. It then buys the affordable option with the highest
//! positive NPV, re-estimates with that unit in the fleet, and repeats.

use serde::{Deserialize, Serialize};

use crate::dispatch::dispatch_year;
use crate::error::{Error, Result};
use crate::scenario::{GenCo, PowerPlant, Scenario, Technology};

/// Linear carbon-price projection `slope * year + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarbonForecast {
    pub slope: f64,
    pub intercept: f64,
}

impl CarbonForecast {
    /// OLS fit through `(year, price)` points. A single point, or points that
    /// all share one year, give a flat line at the mean price.
    pub fn fit(history: &[(i32, f64)]) -> Result<Self> {
        if history.is_empty() {
            return Err(Error::EmptyHistory);
        }
        let n = history.len() as f64;
        let mean_x = history.iter().map(|&(x, _)| x as f64).sum::<f64>() / n;
        let mean_y = history.iter().map(|&(_, y)| y).sum::<f64>() / n;
        let (mut sxx, mut sxy) = (0.0, 0.0);
        for &(x, y) in history {
            let dx = x as f64 - mean_x;
            sxx += dx * dx;
            sxy += dx * (y - mean_y);
        }
        if sxx == 0.0 {
            return Ok(Self { slope: 0.0, intercept: mean_y });
        }
        let slope = sxy / sxx;
        Ok(Self { slope, intercept: mean_y - slope * mean_x })
    }

    pub fn at(&self, year: i32) -> f64 {
        self.slope * year as f64 + self.intercept
    }
}

pub fn forecast_carbon_price(history: &[(i32, f64)], target_year: i32) -> Result<f64> {
    Ok(CarbonForecast::fit(history)?.at(target_year))
}

/// Net present value `Σ R_t / (1 + i)^t` for `t = 0..N`.
pub fn npv(cash_flows: &[f64], discount_rate: f64) -> f64 {
    let factor = 1.0 + discount_rate;
    cash_flows
        .iter()
        .enumerate()
        .map(|(t, r)| r / factor.powi(t as i32))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvestmentDecision {
    pub genco: String,
    pub technology: String,
    pub unit_count: u32,
    pub npv: f64,
    /// £ debited from the GenCo's budget.
    pub capital_spent: f64,
}

const CANDIDATE_ID: u32 = u32::MAX;

/// Plants from `fleet` still operating in `year`.
fn surviving(fleet: &[PowerPlant], year: i32, s: &Scenario) -> Result<Vec<PowerPlant>> {
    let mut out = Vec::with_capacity(fleet.len() + 1);
    for plant in fleet {
        if plant.is_active(s.technology(&plant.technology)?, year) {
            out.push(plant.clone());
        }
    }
    Ok(out)
}

/// Net yearly cash flow of one unit of `candidate`, from a simulated market
/// `lookahead_years` after `decision_year`: operating margin over its SRMC at
/// the forecast carbon price, less fixed O&M.
///
/// The simulated fleet is `fleet` minus plants retired by then, plus the
/// candidate.
pub fn estimate_yearly_revenue(
    candidate: &Technology,
    decision_year: i32,
    s: &Scenario,
    fleet: &[PowerPlant],
    forecast: &CarbonForecast,
) -> Result<f64> {
    let target = decision_year + s.investment.lookahead_years as i32;
    let mut future = surviving(fleet, target, s)?;
    candidate_cash_flow(candidate, target, s, &mut future, forecast.at(target))
}

fn candidate_cash_flow(
    candidate: &Technology,
    target: i32,
    s: &Scenario,
    future: &mut Vec<PowerPlant>,
    carbon_price: f64,
) -> Result<f64> {
    future.push(PowerPlant {
        id: CANDIDATE_ID,
        technology: candidate.name.clone(),
        owner: String::new(),
        commission_year: target,
        unit_count: 1,
    });
    let outcome = dispatch_year(future, target, carbon_price, 1.0, s);
    future.pop();
    let outcome = outcome?;
    let margin = *outcome.plant_margin.last().expect("candidate was dispatched");
    Ok(margin - candidate.fixed_om * candidate.capacity_mw)
}

/// NPV of one unit: capital outlay at t = 0, then `yearly` for every year of
/// the technology's life.
fn unit_npv(tech: &Technology, yearly: f64, discount_rate: f64) -> f64 {
    let mut flows = vec![yearly; tech.lifetime_years as usize + 1];
    flows[0] = -tech.capital_cost * tech.capacity_mw;
    npv(&flows, discount_rate)
}

/// Index of the highest-NPV option that is positive and affordable; the
/// earlier option wins ties.
pub(crate) fn pick_best(options: &[(f64, f64)], budget: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &(value, cost)) in options.iter().enumerate() {
        if value > 0.0 && cost <= budget && best.map_or(true, |b| value > options[b].0) {
            best = Some(i);
        }
    }
    best
}

/// Runs one GenCo's investment round for `decision_year`, debiting its
/// budget. Returns one decision per unit bought, in purchase order.
pub fn invest(
    genco: &mut GenCo,
    decision_year: i32,
    s: &Scenario,
    fleet: &[PowerPlant],
    carbon_history: &[(i32, f64)],
) -> Result<Vec<InvestmentDecision>> {
    let forecast = CarbonForecast::fit(carbon_history)?;
    let target = decision_year + s.investment.lookahead_years as i32;
    let carbon_price = forecast.at(target);
    let mut future = surviving(fleet, target, s)?;
    let mut decisions = Vec::new();

    while decisions.len() < s.investment.max_builds_per_year as usize {
        let mut options = Vec::with_capacity(s.technologies.len());
        for tech in &s.technologies {
            let cost = tech.capital_cost * tech.capacity_mw;
            if !tech.investable || cost > genco.budget {
                options.push((f64::NEG_INFINITY, cost));
                continue;
            }
            let yearly = candidate_cash_flow(tech, target, s, &mut future, carbon_price)?;
            options.push((unit_npv(tech, yearly, s.discount_rate), cost));
        }
        let Some(choice) = pick_best(&options, genco.budget) else { break };
        let tech = &s.technologies[choice];
        let (value, cost) = options[choice];
        genco.budget -= cost;
        decisions.push(InvestmentDecision {
            genco: genco.id.clone(),
            technology: tech.name.clone(),
            unit_count: 1,
            npv: value,
            capital_spent: cost,
        });
        let plant = PowerPlant {
            id: CANDIDATE_ID - decisions.len() as u32,
            technology: tech.name.clone(),
            owner: genco.id.clone(),
            commission_year: decision_year + tech.construction_lag_years as i32,
            unit_count: 1,
        };
        if plant.is_active(tech, target) {
            future.push(plant);
        }
    }
    Ok(decisions)
}
