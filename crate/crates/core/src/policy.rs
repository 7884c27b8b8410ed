//! Carbon-tax trajectories and their genome encodings.
//!
//! Two representations are searched: a free price per simulated year, and a
//! straight line `price = slope * y + intercept` in the year index `y`
//! (1-based). Linear policies may go negative; the simulator then treats the
//! tax as a per-tonne subsidy.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Genes of a non-parametric policy: one price per year, 18 years.
pub const NON_PARAMETRIC_YEARS: usize = 18;
pub const PRICE_BOUNDS: (f64, f64) = (0.0, 250.0);
pub const SLOPE_BOUNDS: (f64, f64) = (-14.0, 14.0);
pub const INTERCEPT_BOUNDS: (f64, f64) = (0.0, 250.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    NonParametric,
    Linear,
}

impl PolicyKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::NonParametric => "free",
            Self::Linear => "linear",
        }
    }

    pub fn genes(self) -> usize {
        match self {
            Self::NonParametric => NON_PARAMETRIC_YEARS,
            Self::Linear => 2,
        }
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" | "non-parametric" | "nonparametric" => Ok(Self::NonParametric),
            "linear" => Ok(Self::Linear),
            other => Err(Error::UnknownPolicyKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CarbonPolicy {
    /// £/tCO2 for year indices 1..=len.
    NonParametric { prices: Vec<f64> },
    /// £/tCO2 = slope * y + intercept.
    Linear { slope: f64, intercept: f64 },
}

impl CarbonPolicy {
    /// A constant price, represented as a zero-slope line.
    pub fn flat(price: f64) -> Self {
        Self::Linear { slope: 0.0, intercept: price }
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            Self::NonParametric { .. } => PolicyKind::NonParametric,
            Self::Linear { .. } => PolicyKind::Linear,
        }
    }

    /// Carbon price for 1-based year index `y`. Linear policies are defined
    /// for every `y >= 1`; non-parametric ones only up to their length.
    pub fn price_at(&self, y: usize) -> Result<f64> {
        match self {
            Self::NonParametric { prices } => {
                if y == 0 || y > prices.len() {
                    return Err(Error::YearOutOfRange { index: y, horizon: prices.len() });
                }
                Ok(prices[y - 1])
            }
            Self::Linear { slope, intercept } => {
                if y == 0 {
                    return Err(Error::YearOutOfRange { index: y, horizon: usize::MAX });
                }
                Ok(slope * y as f64 + intercept)
            }
        }
    }

    pub fn encode(&self) -> Vec<f64> {
        match self {
            Self::NonParametric { prices } => prices.clone(),
            Self::Linear { slope, intercept } => vec![*slope, *intercept],
        }
    }

    /// Checks genome length and bounds for this policy's kind.
    pub fn validate(&self) -> Result<()> {
        decode(&self.encode(), self.kind(), false).map(|_| ())
    }
}

/// Per-gene `(low, high)` search box.
pub fn bounds(kind: PolicyKind) -> Vec<(f64, f64)> {
    match kind {
        PolicyKind::NonParametric => vec![PRICE_BOUNDS; NON_PARAMETRIC_YEARS],
        PolicyKind::Linear => vec![SLOPE_BOUNDS, INTERCEPT_BOUNDS],
    }
}

/// Builds a policy from a genome. With `repair`, out-of-range genes are
/// clamped into bounds; otherwise they are an error.
pub fn decode(genome: &[f64], kind: PolicyKind, repair: bool) -> Result<CarbonPolicy> {
    let box_ = bounds(kind);
    if genome.len() != box_.len() {
        return Err(Error::GenomeLength { kind: kind.name(), expected: box_.len(), got: genome.len() });
    }
    let mut genes = genome.to_vec();
    for (index, (gene, &(low, high))) in genes.iter_mut().zip(&box_).enumerate() {
        if gene.is_nan() {
            return Err(Error::GeneOutOfBounds { index, value: *gene, low, high });
        }
        if *gene < low || *gene > high {
            if !repair {
                return Err(Error::GeneOutOfBounds { index, value: *gene, low, high });
            }
            *gene = gene.clamp(low, high);
        }
    }
    Ok(match kind {
        PolicyKind::NonParametric => CarbonPolicy::NonParametric { prices: genes },
        PolicyKind::Linear => CarbonPolicy::Linear { slope: genes[0], intercept: genes[1] },
    })
}

/// Parses `linear:a1,a2`, `free:v1,...,v18` or `flat:c`; the result must lie
/// within bounds.
pub fn parse_policy_spec(spec: &str) -> Result<CarbonPolicy> {
    let malformed = || Error::PolicySpec(spec.to_string());
    let (head, tail) = spec.split_once(':').ok_or_else(malformed)?;
    let values: Vec<f64> = tail
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| malformed())?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(malformed());
    }
    match head.trim() {
        "flat" => match values.as_slice() {
            [c] => {
                let policy = CarbonPolicy::flat(*c);
                policy.validate()?;
                Ok(policy)
            }
            _ => Err(malformed()),
        },
        kind => {
            let kind = PolicyKind::from_str(kind).map_err(|_| malformed())?;
            decode(&values, kind, false)
        }
    }
}
