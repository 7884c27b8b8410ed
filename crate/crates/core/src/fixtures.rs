//! Scenarios bundled with the crate.
//!
//! `uk_synthetic` is a desk-scale, UK-flavoured system with seven
//! technologies and an 18-year horizon. Its numbers are illustrative, not a
//! calibration. `static_fossil` is a coal-only system whose carbon intensity
//! cannot change, useful as a reference point.

use crate::error::Result;
use crate::scenario::Scenario;

pub const UK_SYNTHETIC: &str = include_str!("../fixtures/uk_synthetic.scenario");
pub const STATIC_FOSSIL: &str = include_str!("../fixtures/static_fossil.scenario");

/// Names accepted by [`bundled`].
pub const NAMES: [&str; 2] = ["uk_synthetic", "static_fossil"];

/// Raw text of a bundled scenario.
pub fn bundled_text(name: &str) -> Option<&'static str> {
    match name {
        "uk_synthetic" => Some(UK_SYNTHETIC),
        "static_fossil" => Some(STATIC_FOSSIL),
        _ => None,
    }
}

/// Parsed and validated bundled scenario.
pub fn bundled(name: &str) -> Option<Result<Scenario>> {
    bundled_text(name).map(Scenario::from_json)
}

pub fn uk_synthetic() -> Scenario {
    Scenario::from_json(UK_SYNTHETIC).expect("bundled scenario is valid")
}

pub fn static_fossil() -> Scenario {
    Scenario::from_json(STATIC_FOSSIL).expect("bundled scenario is valid")
}
