//! Run manifests: everything needed to reproduce a command's outputs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use taxsim_core::{fixtures, CarbonPolicy, PolicyKind, Scenario};
use taxsim_nsga2::GaConfig;

use crate::error::{CliError, Result};

pub const FILE_NAME: &str = "manifest.json";

/// The resolved configuration of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "config", rename_all = "lowercase")]
pub enum RunConfig {
    Simulate { scenario: ScenarioRef, policy: CarbonPolicy, seed: u64 },
    Optimize { scenario: ScenarioRef, kind: PolicyKind, ga: GaConfig },
    Benchmark { problem: String, ga: GaConfig, fail_above: Option<f64> },
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Simulate { .. } => "simulate",
            Self::Optimize { .. } => "optimize",
            Self::Benchmark { .. } => "benchmark",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Self::Simulate { seed, .. } => *seed,
            Self::Optimize { ga, .. } | Self::Benchmark { ga, .. } => ga.seed,
        }
    }
}

/// Where a scenario came from and the SHA-256 of its text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRef {
    /// Absolute file path, or the name of a bundled scenario.
    pub source: String,
    pub bundled: bool,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timings {
    pub compute_seconds: f64,
    pub total_seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Command line of the run that wrote this manifest.
    pub invocation: Vec<String>,
    #[serde(flatten)]
    pub config: RunConfig,
    pub seed: u64,
    /// Worker threads used; results do not depend on it.
    pub jobs: usize,
    /// Data files written next to the manifest.
    pub outputs: Vec<String>,
    pub timings: Timings,
}

impl RunManifest {
    pub fn new(config: RunConfig, jobs: usize, outputs: Vec<String>, timings: Timings) -> Self {
        Self {
            tool: "taxsim".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            invocation: std::env::args().collect(),
            seed: config.seed(),
            config,
            jobs,
            outputs,
            timings,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read manifest {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("malformed manifest {}: {e}", path.display())))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Loads a scenario from a file path or, failing that, a bundled name.
pub fn resolve_scenario(source: &str) -> Result<(Scenario, ScenarioRef)> {
    let path = Path::new(source);
    let (text, bundled) = if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read scenario {source}: {e}")))?;
        (text, false)
    } else if let Some(text) = fixtures::bundled_text(source) {
        (text.to_string(), true)
    } else {
        return Err(CliError::validation(format!(
            "scenario `{source}` is neither a file nor a bundled scenario ({})",
            fixtures::NAMES.join(", ")
        )));
    };
    let scenario = Scenario::from_json(&text)
        .map_err(|e| CliError::validation(format!("scenario {source}: {e}")))?;
    let source = if bundled {
        source.to_string()
    } else {
        fs::canonicalize(path).map(|p| p.display().to_string()).unwrap_or_else(|_| source.to_string())
    };
    let reference = ScenarioRef { source, bundled, sha256: sha256_hex(text.as_bytes()) };
    Ok((scenario, reference))
}

/// Re-resolves a recorded scenario and checks it is unchanged.
pub fn reload_scenario(recorded: &ScenarioRef) -> Result<Scenario> {
    let (scenario, now) = if recorded.bundled {
        let text = fixtures::bundled_text(&recorded.source).ok_or_else(|| {
            CliError::validation(format!("bundled scenario `{}` no longer exists", recorded.source))
        })?;
        let s = Scenario::from_json(text).map_err(CliError::validation)?;
        (s, sha256_hex(text.as_bytes()))
    } else {
        let (s, r) = resolve_scenario(&recorded.source)?;
        (s, r.sha256)
    };
    if now != recorded.sha256 {
        return Err(CliError::validation(format!(
            "scenario `{}` has changed since the manifest was written (sha256 {} != {})",
            recorded.source, now, recorded.sha256
        )));
    }
    Ok(scenario)
}
