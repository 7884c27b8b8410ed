//! Agent-based electricity market simulator driven by carbon-tax policies.
//!
//! A [`Scenario`] describes the world: technology catalog, starting fleet,
//! generation companies, representative days and fuel price paths. Each
//! simulated year the companies invest by net present value, the market
//! clears in merit order for every representative-day segment, and the final
//! year's average price and relative carbon intensity become the objectives
//! handed to the optimizer.

pub mod dispatch;
pub mod error;
pub mod fixtures;
pub mod investment;
pub mod policy;
pub mod scenario;
pub mod simulation;

pub use dispatch::{build_bids, clear_segment, run_year, srmc, Bid, SegmentClearing, YearResult};
pub use error::{Error, Result};
pub use investment::{
    estimate_yearly_revenue, forecast_carbon_price, invest, npv, CarbonForecast,
    InvestmentDecision,
};
pub use policy::{bounds, decode, parse_policy_spec, CarbonPolicy, PolicyKind};
pub use scenario::{
    load_scenario, save_scenario, validate_scenario, Availability, GenCo, PowerPlant,
    RepresentativeDay, Scenario, Segment, Technology, Violation,
};
pub use simulation::{evaluate_objectives, run_simulation, EventKind, SimulationEvent, SimulationResult};

#[cfg(test)]
pub(crate) mod testutil;
