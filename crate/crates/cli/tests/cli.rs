use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn taxsim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taxsim"))
        .args(args)
        .current_dir(dir)
        .env_remove("TAXSIM_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read_json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn static_fossil_flat_zero_has_unit_rci() {
    let dir = tempfile::tempdir().unwrap();
    let o = taxsim(dir.path(), &["simulate", "--scenario", "static_fossil", "--policy", "flat:0", "--seed", "1", "--out", "r"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("r/objectives.csv")).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let col = headers.iter().position(|h| h == "objective_rci").unwrap();
    assert_eq!(row[col].parse::<f64>().unwrap(), 1.0);
    for f in ["years.csv", "energy.csv", "events.csv", "manifest.json"] {
        assert!(dir.path().join("r").join(f).is_file(), "{f}");
    }
    let years = fs::read_to_string(dir.path().join("r/years.csv")).unwrap();
    assert_eq!(years.lines().count(), 19);
}

#[test]
fn malformed_policy_exits_one_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    for policy in ["flat:x", "linear:1", "free:1,2,3", "linear:20,10", "steps:1"] {
        let o = taxsim(dir.path(), &["simulate", "--policy", policy, "--out", "r"]);
        assert_eq!(code(&o), 1, "{policy}");
        assert!(!o.stderr.is_empty());
        assert!(!dir.path().join("r").exists(), "{policy} left outputs");
    }
}

#[test]
fn bad_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["simulate", "--scenario", "nowhere.scenario", "--policy", "flat:0", "--out", "r"],
        &["optimize", "--kind", "steps", "--out", "r"],
        &["optimize", "--kind", "linear", "--pop", "7", "--out", "r"],
        &["benchmark", "--problem", "dtlz2", "--out", "r"],
        &["benchmark", "--problem", "zdt1", "--jobs", "0", "--out", "r"],
        &["simulate"],
    ];
    for args in cases {
        let o = taxsim(dir.path(), args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(!dir.path().join("r").exists(), "{args:?} left outputs");
    }
    assert_eq!(code(&taxsim(dir.path(), &["--help"])), 0);
    assert_eq!(code(&taxsim(dir.path(), &["--version"])), 0);
}

#[test]
fn invalid_scenario_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(taxsim_core::fixtures::STATIC_FOSSIL).unwrap();
    v["representative_days"][0]["weight_days"] = serde_json::json!(1.0);
    fs::write(dir.path().join("short.scenario"), v.to_string()).unwrap();
    let o = taxsim(dir.path(), &["simulate", "--scenario", "short.scenario", "--policy", "flat:0", "--out", "r"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("representative_days"));
}

#[test]
fn free_policy_must_cover_the_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(taxsim_core::fixtures::STATIC_FOSSIL).unwrap();
    v["horizon_years"] = serde_json::json!(20);
    v["fuel_prices"]["coal"]["2036"] = serde_json::json!(9.0);
    v["fuel_prices"]["coal"]["2037"] = serde_json::json!(9.0);
    fs::write(dir.path().join("long.scenario"), v.to_string()).unwrap();
    let free = format!("free:{}", vec!["10"; 18].join(","));
    let o = taxsim(dir.path(), &["simulate", "--scenario", "long.scenario", "--policy", &free, "--out", "r"]);
    assert_eq!(code(&o), 1);
    let o = taxsim(dir.path(), &["simulate", "--scenario", "long.scenario", "--policy", "linear:1,10", "--out", "r"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn out_dir_defaults_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_taxsim"))
        .args(["simulate", "--scenario", "static_fossil", "--policy", "flat:5"])
        .current_dir(dir.path())
        .env("TAXSIM_OUT_DIR", "from-env")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("from-env/years.csv").is_file());

    let o = taxsim(dir.path(), &["simulate", "--scenario", "static_fossil", "--policy", "flat:5"]);
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("out/years.csv").is_file());
}

#[test]
fn repeated_simulation_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = taxsim(dir.path(), &["simulate", "--policy", "linear:3,40", "--seed", "4", "--out", out]);
        assert_eq!(code(&o), 0);
    }
    for f in ["years.csv", "energy.csv", "events.csv", "objectives.csv"] {
        assert_eq!(fs::read(dir.path().join("a").join(f)).unwrap(), fs::read(dir.path().join("b").join(f)).unwrap(), "{f}");
    }
}

#[test]
fn free_optimization_writes_eighteen_gene_genomes() {
    let dir = tempfile::tempdir().unwrap();
    let o = taxsim(dir.path(), &["optimize", "--kind", "free", "--pop", "8", "--gens", "1", "--seed", "2", "--out", "r"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = read_json(dir.path().join("r/pareto.json"));
    let front = p["front"].as_array().unwrap();
    assert!(!front.is_empty());
    for point in front {
        let genome = point["genome"].as_array().unwrap();
        assert_eq!(genome.len(), 18);
        assert!(genome.iter().all(|g| (0.0..=250.0).contains(&g.as_f64().unwrap())));
        assert_eq!(point["tax_by_year"], point["genome"]);
    }
    let header = fs::read_to_string(dir.path().join("r/generations.csv")).unwrap();
    assert!(header.starts_with("generation,individual,tax_2018,"));
    assert_eq!(header.lines().count(), 1 + 2 * 8);
}

#[test]
fn linear_optimization_front_is_in_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let o = taxsim(dir.path(), &["optimize", "--kind", "linear", "--pop", "8", "--gens", "2", "--seed", "7", "--out", "r"]);
    assert_eq!(code(&o), 0);
    let p = read_json(dir.path().join("r/pareto.json"));
    let front = p["front"].as_array().unwrap();
    assert!(!front.is_empty());
    for point in front {
        let g: Vec<f64> = point["genome"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert!((-14.0..=14.0).contains(&g[0]) && (0.0..=250.0).contains(&g[1]));
        let taxes = point["tax_by_year"].as_array().unwrap();
        assert_eq!(taxes.len(), 18);
        assert_eq!(taxes[17].as_f64().unwrap(), g[0] * 18.0 + g[1]);
    }
    assert!(String::from_utf8_lossy(&o.stdout).contains("final front"));
}

#[test]
fn benchmark_threshold_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = taxsim(dir.path(), &["benchmark", "--problem", "zdt1", "--pop", "20", "--gens", "0", "--fail-above", "0.05", "--out", "r"]);
    assert_eq!(code(&o), 2);
    // The run itself completed, so its outputs are kept.
    let report = read_json(dir.path().join("r/benchmark.json"));
    assert!(report["generational_distance"].as_f64().unwrap() > 0.05);

    let o = taxsim(dir.path(), &["benchmark", "--problem", "schaffer", "--pop", "50", "--gens", "50", "--fail-above", "0.05", "--out", "s"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("generational distance"));
}

#[test]
fn replay_detects_an_edited_scenario() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.scenario"), taxsim_core::fixtures::STATIC_FOSSIL).unwrap();
    let o = taxsim(dir.path(), &["simulate", "--scenario", "s.scenario", "--policy", "flat:1", "--out", "r"]);
    assert_eq!(code(&o), 0);
    let o = taxsim(dir.path(), &["replay", "r/manifest.json", "--out", "again"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(dir.path().join("r/years.csv")).unwrap(), fs::read(dir.path().join("again/years.csv")).unwrap());

    let edited = taxsim_core::fixtures::STATIC_FOSSIL.replace("\"static_fossil\"", "\"edited\"");
    fs::write(dir.path().join("s.scenario"), edited).unwrap();
    let o = taxsim(dir.path(), &["replay", "r/manifest.json", "--out", "third"]);
    assert_eq!(code(&o), 1);
    assert!(!dir.path().join("third").exists());
    assert_eq!(code(&taxsim(dir.path(), &["replay", "missing.json"])), 1);
}

#[test]
fn manifest_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = taxsim(dir.path(), &["simulate", "--policy", "flat:12.5", "--seed", "3", "--out", "r"]);
    assert_eq!(code(&o), 0);
    let m = read_json(dir.path().join("r/manifest.json"));
    assert_eq!(m["tool"], "taxsim");
    assert_eq!(m["command"], "simulate");
    assert_eq!(m["seed"], 3);
    assert_eq!(m["config"]["policy"]["intercept"], 12.5);
    assert_eq!(m["config"]["scenario"]["source"], "uk_synthetic");
    assert_eq!(m["config"]["scenario"]["sha256"].as_str().unwrap().len(), 64);
    assert!(m["timings"]["total_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 4);
}
