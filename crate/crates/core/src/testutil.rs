use crate::dispatch::Bid;
use crate::scenario::{Availability, Technology};

pub fn tech(name: &str, fuel: Option<&str>, efficiency: f64, variable_om: f64, emission_factor: f64) -> Technology {
    Technology {
        name: name.into(),
        capacity_mw: 100.0,
        capital_cost: 1.0e6,
        fixed_om: 1.0e4,
        variable_om,
        fuel_kind: fuel.map(Into::into),
        efficiency,
        emission_factor,
        lifetime_years: 30,
        construction_lag_years: 0,
        availability: Availability::Firm,
        investable: true,
    }
}

pub fn bid(plant_id: u32, available_mw: f64, srmc: f64) -> Bid {
    Bid { plant_id, technology: 0, available_mw, srmc, emission_factor: 0.0 }
}
