//! The immutable world description consumed by the simulator.
//!
//! Scenarios are stored as JSON documents; see `docs/scenario-schema.md`.
//! Optional fields take the defaults documented on each item, and
//! `base_carbon_intensity`, when omitted, is derived on load from the
//! start-year dispatch of the initial fleet at zero carbon price.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dispatch;
use crate::error::{Error, Result};

/// Hours in the simulated year; representative-day weights must add up to it.
pub const HOURS_PER_YEAR: f64 = 8760.0;
const HOURS_TOLERANCE: f64 = 1.0e-6;

/// Which day profile, if any, limits a technology's output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Availability {
    /// Full nameplate capacity in every segment.
    #[default]
    Firm,
    /// Scaled by the segment's solar capacity factor.
    Solar,
    /// Scaled by the segment's wind capacity factor.
    Wind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Technology {
    pub name: String,
    /// MW per unit.
    pub capacity_mw: f64,
    /// £ per MW of capacity.
    pub capital_cost: f64,
    /// £ per MW per year.
    pub fixed_om: f64,
    /// £ per MWh generated.
    pub variable_om: f64,
    /// Key into [`Scenario::fuel_prices`]; `None` for unfuelled plant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuel_kind: Option<String>,
    /// Electrical output per unit of thermal input.
    #[serde(default = "default_efficiency")]
    pub efficiency: f64,
    /// tCO2 per MWh electrical.
    #[serde(default)]
    pub emission_factor: f64,
    pub lifetime_years: u32,
    #[serde(default)]
    pub construction_lag_years: u32,
    #[serde(default)]
    pub availability: Availability,
    /// Whether GenCos may build new units of this technology.
    #[serde(default = "default_true")]
    pub investable: bool,
}

impl Technology {
    pub fn is_intermittent(&self) -> bool {
        self.availability != Availability::Firm
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerPlant {
    /// Assigned from the position in the fleet on load; new builds get fresh ids.
    #[serde(skip)]
    pub id: u32,
    pub technology: String,
    pub owner: String,
    pub commission_year: i32,
    #[serde(default = "default_units")]
    pub unit_count: u32,
}

impl PowerPlant {
    /// First calendar year the plant no longer operates.
    pub fn retire_year(&self, tech: &Technology) -> i32 {
        self.commission_year + tech.lifetime_years as i32
    }

    pub fn is_active(&self, tech: &Technology, year: i32) -> bool {
        self.commission_year <= year && year < self.retire_year(tech)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenCo {
    pub id: String,
    /// £ available for investment.
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub duration_hours: f64,
    pub demand_mw: f64,
    pub solar_capacity_factor: f64,
    pub wind_capacity_factor: f64,
}

impl Segment {
    pub fn capacity_factor(&self, availability: Availability) -> f64 {
        match availability {
            Availability::Firm => 1.0,
            Availability::Solar => self.solar_capacity_factor,
            Availability::Wind => self.wind_capacity_factor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentativeDay {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    /// Number of real days this day stands for.
    pub weight_days: f64,
    pub segments: Vec<Segment>,
}

/// Knobs for the GenCo investment rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvestmentSettings {
    /// Years ahead at which the revenue-estimation market is simulated.
    pub lookahead_years: u32,
    /// Credit each GenCo's realized operating profit to its budget yearly.
    pub reinvest_profits: bool,
    /// Upper bound on units one GenCo can commit to in a single year.
    pub max_builds_per_year: u32,
}

impl Default for InvestmentSettings {
    fn default() -> Self {
        Self {
            lookahead_years: 10,
            reinvest_profits: true,
            max_builds_per_year: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub start_year: i32,
    /// Simulated years; year index 1 is `start_year`.
    #[serde(default = "default_horizon")]
    pub horizon_years: u32,
    pub technologies: Vec<Technology>,
    pub initial_fleet: Vec<PowerPlant>,
    pub gencos: Vec<GenCo>,
    pub representative_days: Vec<RepresentativeDay>,
    /// £ per MWh thermal, per fuel kind and calendar year. Years after the
    /// last listed one reuse the last price.
    #[serde(default)]
    pub fuel_prices: BTreeMap<String, BTreeMap<i32, f64>>,
    /// Multiplier applied to all demand once per year after the start year.
    #[serde(default = "default_growth")]
    pub demand_growth: f64,
    #[serde(default = "default_discount_rate")]
    pub discount_rate: f64,
    /// tCO2/MWh denominator of the relative-intensity objective.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_carbon_intensity: Option<f64>,
    /// £/MWh paid whenever demand exceeds available capacity.
    #[serde(default = "default_voll")]
    pub loss_of_load_price: f64,
    /// Half-width of the seeded uniform yearly demand noise (0 = off).
    #[serde(default)]
    pub demand_jitter: f64,
    #[serde(default)]
    pub investment: InvestmentSettings,
}

fn default_efficiency() -> f64 {
    1.0
}
fn default_true() -> bool {
    true
}
fn default_units() -> u32 {
    1
}
fn default_horizon() -> u32 {
    18
}
fn default_growth() -> f64 {
    1.0
}
fn default_discount_rate() -> f64 {
    0.06
}
fn default_voll() -> f64 {
    6000.0
}

impl Scenario {
    /// Parses a JSON document, applies defaults and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut s: Scenario = serde_json::from_str(text)?;
        s.finish()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    fn finish(&mut self) -> Result<()> {
        for (i, plant) in self.initial_fleet.iter_mut().enumerate() {
            plant.id = i as u32;
        }
        let violations = validate_scenario(self);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        if self.base_carbon_intensity.is_none() {
            let intensity = dispatch::start_year_intensity(self)?;
            if !(intensity > 0.0) {
                return Err(Error::Invalid(vec![Violation::new(
                    "base_carbon_intensity",
                    "start-year fleet emits nothing; set base_carbon_intensity explicitly",
                )]));
            }
            self.base_carbon_intensity = Some(intensity);
        }
        Ok(())
    }

    pub fn technology(&self, name: &str) -> Result<&Technology> {
        self.technologies
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownTechnology(name.to_string()))
    }

    pub fn technology_index(&self, name: &str) -> Result<usize> {
        self.technologies
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| Error::UnknownTechnology(name.to_string()))
    }

    /// Calendar year of year index `y` (1-based).
    pub fn calendar_year(&self, index: u32) -> i32 {
        self.start_year + index as i32 - 1
    }

    pub fn final_year(&self) -> i32 {
        self.calendar_year(self.horizon_years)
    }

    /// £/MWh thermal for `fuel` in `year`; later years than listed hold the
    /// last price flat.
    pub fn fuel_price(&self, fuel: &str, year: i32) -> Result<f64> {
        let missing = || Error::MissingFuelPrice { fuel: fuel.to_string(), year };
        let series = self.fuel_prices.get(fuel).ok_or_else(missing)?;
        if let Some(&p) = series.get(&year) {
            return Ok(p);
        }
        match series.last_key_value() {
            Some((&last, &p)) if year > last => Ok(p),
            _ => Err(missing()),
        }
    }

    /// Cumulative demand multiplier relative to the start year.
    pub fn demand_factor(&self, year: i32) -> f64 {
        self.demand_growth.powi(year - self.start_year)
    }

    pub fn base_intensity(&self) -> f64 {
        self.base_carbon_intensity.unwrap_or(f64::NAN)
    }

    pub fn total_weighted_hours(&self) -> f64 {
        self.representative_days
            .iter()
            .map(|d| d.weight_days * d.segments.iter().map(|s| s.duration_hours).sum::<f64>())
            .sum()
    }
}

/// Reads, defaults and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Scenario::from_json(&text)
}

pub fn save_scenario(s: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, s.to_json() + "\n")
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// A broken scenario invariant, located by a field path such as
/// `technologies[2].efficiency`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Checks every scenario invariant. An empty list means the scenario is valid.
pub fn validate_scenario(s: &Scenario) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |path: String, message: String| out.push(Violation::new(path, message));

    if s.horizon_years < 2 {
        bad("horizon_years".into(), format!("must be at least 2, got {}", s.horizon_years));
    }
    if !(s.discount_rate > -1.0 && s.discount_rate.is_finite()) {
        bad("discount_rate".into(), format!("must be finite and > -1, got {}", s.discount_rate));
    }
    if !(s.loss_of_load_price > 0.0 && s.loss_of_load_price.is_finite()) {
        bad("loss_of_load_price".into(), format!("must be positive, got {}", s.loss_of_load_price));
    }
    if !(s.demand_growth > 0.0 && s.demand_growth.is_finite()) {
        bad("demand_growth".into(), format!("must be positive, got {}", s.demand_growth));
    }
    if !(0.0..1.0).contains(&s.demand_jitter) {
        bad("demand_jitter".into(), format!("must lie in [0, 1), got {}", s.demand_jitter));
    }
    if let Some(b) = s.base_carbon_intensity {
        if !(b > 0.0 && b.is_finite()) {
            bad("base_carbon_intensity".into(), format!("must be positive, got {b}"));
        }
    }
    if s.investment.lookahead_years == 0 {
        bad("investment.lookahead_years".into(), "must be at least 1".into());
    }

    if s.technologies.is_empty() {
        bad("technologies".into(), "catalog is empty".into());
    }
    let mut names = BTreeSet::new();
    let mut fuels_used = BTreeSet::new();
    for (i, t) in s.technologies.iter().enumerate() {
        let p = |field: &str| format!("technologies[{i}].{field}");
        if !names.insert(t.name.as_str()) {
            bad(p("name"), format!("duplicate technology `{}`", t.name));
        }
        if !(t.capacity_mw > 0.0 && t.capacity_mw.is_finite()) {
            bad(p("capacity_mw"), format!("must be positive, got {}", t.capacity_mw));
        }
        if !(t.efficiency > 0.0 && t.efficiency <= 1.0) {
            bad(p("efficiency"), format!("must lie in (0, 1], got {}", t.efficiency));
        }
        if !(t.emission_factor >= 0.0 && t.emission_factor.is_finite()) {
            bad(p("emission_factor"), format!("must be non-negative, got {}", t.emission_factor));
        }
        if t.lifetime_years < 1 {
            bad(p("lifetime_years"), "must be at least 1".into());
        }
        for (field, v) in [("capital_cost", t.capital_cost), ("fixed_om", t.fixed_om)] {
            if !(v >= 0.0 && v.is_finite()) {
                bad(p(field), format!("must be non-negative, got {v}"));
            }
        }
        if !t.variable_om.is_finite() {
            bad(p("variable_om"), format!("must be finite, got {}", t.variable_om));
        }
        if let Some(fuel) = &t.fuel_kind {
            fuels_used.insert(fuel.as_str());
        }
    }

    let first = s.start_year;
    let last = s.start_year + s.horizon_years as i32 - 1;
    for fuel in fuels_used {
        match s.fuel_prices.get(fuel) {
            None => bad(format!("fuel_prices.{fuel}"), "no price series for a fuel in use".into()),
            Some(series) => {
                for year in first..=last {
                    match series.get(&year) {
                        None => bad(
                            format!("fuel_prices.{fuel}"),
                            format!("no price for {year} (series must cover {first}..={last})"),
                        ),
                        Some(&v) if !(v >= 0.0 && v.is_finite()) => {
                            bad(format!("fuel_prices.{fuel}.{year}"), format!("must be non-negative, got {v}"))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }

    let mut genco_ids = BTreeSet::new();
    for (i, g) in s.gencos.iter().enumerate() {
        if !genco_ids.insert(g.id.as_str()) {
            bad(format!("gencos[{i}].id"), format!("duplicate GenCo `{}`", g.id));
        }
        if !(g.budget >= 0.0 && g.budget.is_finite()) {
            bad(format!("gencos[{i}].budget"), format!("must be non-negative, got {}", g.budget));
        }
    }

    for (i, plant) in s.initial_fleet.iter().enumerate() {
        if !names.contains(plant.technology.as_str()) {
            bad(format!("initial_fleet[{i}].technology"), format!("unknown technology `{}`", plant.technology));
        }
        if !genco_ids.contains(plant.owner.as_str()) {
            bad(format!("initial_fleet[{i}].owner"), format!("unknown GenCo `{}`", plant.owner));
        }
        if plant.unit_count < 1 {
            bad(format!("initial_fleet[{i}].unit_count"), "must be at least 1".into());
        }
    }

    if s.representative_days.is_empty() {
        bad("representative_days".into(), "at least one representative day is required".into());
    }
    for (d, day) in s.representative_days.iter().enumerate() {
        if !(day.weight_days > 0.0 && day.weight_days.is_finite()) {
            bad(format!("representative_days[{d}].weight_days"), format!("must be positive, got {}", day.weight_days));
        }
        if day.segments.is_empty() {
            bad(format!("representative_days[{d}].segments"), "day has no segments".into());
        }
        for (k, seg) in day.segments.iter().enumerate() {
            let p = |field: &str| format!("representative_days[{d}].segments[{k}].{field}");
            if !(seg.duration_hours > 0.0 && seg.duration_hours.is_finite()) {
                bad(p("duration_hours"), format!("must be positive, got {}", seg.duration_hours));
            }
            if !(seg.demand_mw > 0.0 && seg.demand_mw.is_finite()) {
                bad(p("demand_mw"), format!("must be positive, got {}", seg.demand_mw));
            }
            for (field, cf) in [
                ("solar_capacity_factor", seg.solar_capacity_factor),
                ("wind_capacity_factor", seg.wind_capacity_factor),
            ] {
                if !(0.0..=1.0).contains(&cf) {
                    bad(p(field), format!("must lie in [0, 1], got {cf}"));
                }
            }
        }
    }
    if !s.representative_days.is_empty() {
        let hours = s.total_weighted_hours();
        if !((hours - HOURS_PER_YEAR).abs() <= HOURS_TOLERANCE) {
            bad(
                "representative_days".into(),
                format!("weighted segment hours total {hours}, expected {HOURS_PER_YEAR}"),
            );
        }
    }
    out
}
