use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};

/// Inclusive `(low, high)` box per gene.
pub type Bounds = Vec<(f64, f64)>;

/// How the mutation probability is applied to a child.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationKind {
    /// Every gene is independently reset with probability `mutation_probability`.
    PerGene,
    /// With probability `mutation_probability` a single, uniformly chosen gene
    /// of the child is reset.
    PerChild,
    /// Bounded polynomial mutation applied per gene with probability
    /// `mutation_probability` and distribution index `eta_m`.
    Polynomial,
}

impl std::str::FromStr for MutationKind {
    type Err = OptimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-gene" | "gene" => Ok(Self::PerGene),
            "per-child" | "child" => Ok(Self::PerChild),
            "polynomial" => Ok(Self::Polynomial),
            other => Err(OptimError::InvalidConfig(format!(
                "unknown mutation kind `{other}` (expected per-gene, per-child or polynomial)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    /// SBX distribution index; larger values keep children closer to parents.
    pub eta_c: f64,
    /// Polynomial-mutation distribution index (only used by
    /// [`MutationKind::Polynomial`]).
    pub eta_m: f64,
    pub mutation_kind: MutationKind,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 20,
            crossover_probability: 0.9,
            mutation_probability: 0.05,
            eta_c: 15.0,
            eta_m: 20.0,
            mutation_kind: MutationKind::PerGene,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let n = self.population_size;
        if n < 4 || n % 2 != 0 {
            return Err(OptimError::InvalidConfig(format!(
                "population size must be even and at least 4, got {n}"
            )));
        }
        for (name, p) in [
            ("crossover_probability", self.crossover_probability),
            ("mutation_probability", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(OptimError::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {p}"
                )));
            }
        }
        for (name, eta) in [("eta_c", self.eta_c), ("eta_m", self.eta_m)] {
            if !(eta.is_finite() && eta >= 0.0) {
                return Err(OptimError::InvalidConfig(format!(
                    "{name} must be finite and non-negative, got {eta}"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn validate_bounds(bounds: &[(f64, f64)]) -> Result<()> {
    if bounds.is_empty() {
        return Err(OptimError::InvalidConfig("genome has no genes".into()));
    }
    for (i, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(OptimError::InvalidConfig(format!(
                "gene {i} has invalid bounds ({lo}, {hi})"
            )));
        }
    }
    Ok(())
}
