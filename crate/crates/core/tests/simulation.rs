mod common;

use proptest::prelude::*;
use serde_json::json;
use taxsim_core::{
    bounds, evaluate_objectives, fixtures, run_simulation, CarbonPolicy, EventKind, PolicyKind,
    SimulationResult,
};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

fn fingerprint(r: &SimulationResult) -> String {
    // serde_json with float_roundtrip prints every f64 exactly.
    serde_json::to_string(r).unwrap()
}

#[test]
fn two_year_gas_hand_trace() {
    let mut v = common::base(
        vec![common::gas()],
        json!([ { "technology": "gas", "owner": "g1", "commission_year": 2010 } ]),
        common::single_segment_day(80.0, 0.0, 0.0),
    );
    v["demand_growth"] = json!(1.02);
    let s = common::parse(&v);
    // Carbon £60 then £70.
    let r = run_simulation(&s, &CarbonPolicy::Linear { slope: 10.0, intercept: 50.0 }, 0).unwrap();
    assert_eq!(r.per_year.len(), 2);

    // 2018: gas bids 20 / 0.5 + 3 + 0.35 * 60 = 64 and serves 80 MW all year.
    let y = &r.per_year[0];
    assert_eq!(y.year, 2018);
    assert!(close(y.carbon_price, 60.0));
    assert!(close(y.average_price, 64.0));
    assert!(close(y.demand_mwh, 700_800.0));
    assert!(close(y.energy_by_technology["gas"], 700_800.0));
    assert!(close(y.emissions_t, 245_280.0));
    assert_eq!(y.unserved_mwh, 0.0);

    // 2019: demand up 2 %, gas bids 21 / 0.5 + 3 + 0.35 * 70 = 69.5.
    let y = &r.per_year[1];
    assert_eq!(y.year, 2019);
    assert!(close(y.average_price, 69.5));
    assert!(close(y.demand_mwh, 714_816.0));
    assert!(close(y.emissions_t, 250_185.6));
    assert!(close(y.carbon_intensity, 0.35));

    assert!(close(r.objective_price, 69.5));
    assert!(close(r.objective_rci, 1.0));
    assert!(r.events.is_empty());
}

#[test]
fn zero_emission_fleet_has_zero_rci() {
    let mut v = common::base(
        vec![common::solar()],
        json!([ { "technology": "solar", "owner": "g1", "commission_year": 2015, "unit_count": 4 } ]),
        common::single_segment_day(50.0, 0.5, 0.0),
    );
    v["fuel_prices"] = json!({});
    v["base_carbon_intensity"] = json!(0.4);
    let s = common::parse(&v);
    let r = run_simulation(&s, &CarbonPolicy::flat(30.0), 3).unwrap();
    assert_eq!(r.objective_rci, 0.0);
    assert_eq!(r.per_year.last().unwrap().emissions_t, 0.0);
}

#[test]
fn shortage_triggers_a_build_that_commissions_after_its_lag() {
    // A cheaper gas unit is infra-marginal against the old one, so it earns
    // (45 - 38) £/MWh at the look-ahead year and pays back within budget.
    let mut ccgt = common::gas();
    ccgt["name"] = json!("ccgt");
    ccgt["efficiency"] = json!(0.6);
    ccgt["construction_lag_years"] = json!(1);
    let mut v = common::base(
        vec![common::gas(), ccgt],
        json!([ { "technology": "gas", "owner": "g1", "commission_year": 2010 } ]),
        common::single_segment_day(150.0, 0.0, 0.0),
    );
    v["horizon_years"] = json!(3);
    v["fuel_prices"]["gas"]["2020"] = json!(21);
    v["gencos"] = json!([ { "id": "g1", "budget": 1.0e8 } ]);
    let s = common::parse(&v);
    let r = run_simulation(&s, &CarbonPolicy::flat(0.0), 0).unwrap();

    let invest: Vec<_> = r.events.iter().filter(|e| e.kind == EventKind::Investment).collect();
    let commission: Vec<_> = r.events.iter().filter(|e| e.kind == EventKind::Commission).collect();
    assert_eq!(invest.len(), 1, "{:?}", r.events);
    assert_eq!((invest[0].year, invest[0].technology.as_str()), (2018, "ccgt"));
    assert!(invest[0].npv.unwrap() > 0.0);
    assert_eq!(commission.len(), 1);
    assert_eq!(commission[0].year, 2019);
    // The first year is short of capacity and clears at the loss-of-load price.
    assert!(r.per_year[0].unserved_mwh > 0.0);
    assert_eq!(r.per_year[0].average_price, s.loss_of_load_price);
    assert_eq!(r.per_year[1].unserved_mwh, 0.0);
    assert!(r.per_year[1].energy_by_technology["ccgt"] > 0.0);
}

#[test]
fn bundled_scenario_shape() {
    let s = fixtures::uk_synthetic();
    assert_eq!(s.technologies.len(), 7);
    assert_eq!(s.horizon_years, 18);
    assert!(taxsim_core::validate_scenario(&s).is_empty());
    let r = run_simulation(&s, &CarbonPolicy::flat(50.0), 1).unwrap();
    assert_eq!(r.per_year.len(), 18);
    assert_eq!(r.per_year[17].year, 2035);
    for y in &r.per_year {
        assert!((y.served_mwh + y.unserved_mwh - y.demand_mwh).abs() <= 1e-6 * y.demand_mwh);
    }
}

#[test]
fn initial_plants_retire_on_schedule() {
    let s = fixtures::uk_synthetic();
    let r = run_simulation(&s, &CarbonPolicy::flat(0.0), 0).unwrap();
    for plant in &s.initial_fleet {
        let tech = s.technology(&plant.technology).unwrap();
        let retire = plant.retire_year(tech);
        let logged = r.events.iter().any(|e| {
            e.kind == EventKind::Retirement && e.year == retire && e.technology == plant.technology && e.genco == plant.owner
        });
        assert_eq!(logged, retire <= s.final_year(), "{plant:?}");
    }
}

#[test]
fn same_seed_is_bitwise_identical() {
    let s = fixtures::uk_synthetic();
    let policy = CarbonPolicy::Linear { slope: 5.0, intercept: 40.0 };
    let a = run_simulation(&s, &policy, 9).unwrap();
    let b = run_simulation(&s, &policy, 9).unwrap();
    assert_eq!(fingerprint(&a), fingerprint(&b));
    assert_eq!(a.objective_price.to_bits(), b.objective_price.to_bits());
    assert_eq!(a.objective_rci.to_bits(), b.objective_rci.to_bits());
}

#[test]
fn seed_only_matters_with_jitter() {
    let mut s = fixtures::uk_synthetic();
    let policy = CarbonPolicy::flat(80.0);
    assert!(s.demand_jitter > 0.0);
    let a = run_simulation(&s, &policy, 1).unwrap();
    let b = run_simulation(&s, &policy, 2).unwrap();
    assert_ne!(fingerprint(&a), fingerprint(&b));

    s.demand_jitter = 0.0;
    let a = run_simulation(&s, &policy, 1).unwrap();
    let b = run_simulation(&s, &policy, 2).unwrap();
    assert_eq!(fingerprint(&a), fingerprint(&b));
}

#[test]
fn constant_linear_equals_expanded_free_policy() {
    let s = fixtures::uk_synthetic();
    for c in [0.0, 37.5, 120.0, 250.0] {
        let linear = evaluate_objectives(&s, &[0.0, c], PolicyKind::Linear, 4).unwrap();
        let free = evaluate_objectives(&s, &[c; 18], PolicyKind::NonParametric, 4).unwrap();
        assert_eq!(linear.0.to_bits(), free.0.to_bits());
        assert_eq!(linear.1.to_bits(), free.1.to_bits());
    }
}

#[test]
fn static_fossil_fleet_keeps_relative_intensity_one() {
    let s = fixtures::static_fossil();
    let (price, rci) = evaluate_objectives(&s, &[0.0; 18], PolicyKind::NonParametric, 1).unwrap();
    assert!((rci - 1.0).abs() <= 1e-12, "{rci}");
    assert!(price > 0.0);
}

#[test]
fn out_of_bounds_genome_is_rejected() {
    let s = fixtures::uk_synthetic();
    assert!(evaluate_objectives(&s, &[15.0, 10.0], PolicyKind::Linear, 0).is_err());
    assert!(evaluate_objectives(&s, &[10.0; 17], PolicyKind::NonParametric, 0).is_err());
}

fn genome_in(kind: PolicyKind) -> impl Strategy<Value = Vec<f64>> {
    bounds(kind).into_iter().map(|(lo, hi)| lo..=hi).collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn linear_objectives_are_finite(genome in genome_in(PolicyKind::Linear), seed in 0u64..1000) {
        let s = fixtures::uk_synthetic();
        let (price, rci) = evaluate_objectives(&s, &genome, PolicyKind::Linear, seed).unwrap();
        prop_assert!(price.is_finite() && rci.is_finite() && rci >= 0.0);
    }

    #[test]
    fn free_objectives_are_finite(genome in genome_in(PolicyKind::NonParametric), seed in 0u64..1000) {
        let s = fixtures::uk_synthetic();
        let (price, rci) = evaluate_objectives(&s, &genome, PolicyKind::NonParametric, seed).unwrap();
        prop_assert!(price.is_finite() && rci.is_finite() && rci >= 0.0);
    }
}
