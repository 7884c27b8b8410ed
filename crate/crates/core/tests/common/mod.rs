#![allow(dead_code)]

use serde_json::{json, Value};
use taxsim_core::Scenario;

/// One 24-hour segment repeated over 365 days.
pub fn single_segment_day(demand_mw: f64, solar_cf: f64, wind_cf: f64) -> Value {
    json!([{ "weight_days": 365, "segments": [
        { "duration_hours": 24, "demand_mw": demand_mw,
          "solar_capacity_factor": solar_cf, "wind_capacity_factor": wind_cf } ] }])
}

pub fn gas() -> Value {
    json!({ "name": "gas", "capacity_mw": 100, "capital_cost": 500000, "fixed_om": 10000,
            "variable_om": 3, "fuel_kind": "gas", "efficiency": 0.5,
            "emission_factor": 0.35, "lifetime_years": 30 })
}

pub fn wind() -> Value {
    json!({ "name": "wind", "capacity_mw": 100, "capital_cost": 1000000, "fixed_om": 25000,
            "variable_om": 0, "lifetime_years": 25, "availability": "wind" })
}

pub fn coal() -> Value {
    json!({ "name": "coal", "capacity_mw": 100, "capital_cost": 1500000, "fixed_om": 40000,
            "variable_om": 2, "fuel_kind": "coal", "efficiency": 0.35,
            "emission_factor": 0.9, "lifetime_years": 40 })
}

pub fn solar() -> Value {
    json!({ "name": "solar", "capacity_mw": 100, "capital_cost": 600000, "fixed_om": 9000,
            "variable_om": 0, "lifetime_years": 25, "availability": "solar" })
}

/// Two-year scenario skeleton; callers override fields before parsing.
pub fn base(technologies: Vec<Value>, fleet: Value, days: Value) -> Value {
    json!({
        "start_year": 2018,
        "horizon_years": 2,
        "technologies": technologies,
        "initial_fleet": fleet,
        "gencos": [ { "id": "g1", "budget": 0 } ],
        "representative_days": days,
        "fuel_prices": { "gas": { "2018": 20, "2019": 21 }, "coal": { "2018": 10, "2019": 10 } }
    })
}

pub fn parse(v: &Value) -> Scenario {
    Scenario::from_json(&v.to_string()).expect("test scenario is valid")
}
