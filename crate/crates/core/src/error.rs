use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid scenario:\n{}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("no {fuel} price for year {year}")]
    MissingFuelPrice { fuel: String, year: i32 },

    #[error("unknown technology `{0}`")]
    UnknownTechnology(String),

    #[error("plant {id} is not operating in {year}")]
    InactivePlant { id: u32, year: i32 },

    #[error("carbon price history is empty")]
    EmptyHistory,

    #[error("unknown policy kind `{0}` (expected free or linear)")]
    UnknownPolicyKind(String),

    #[error("{kind} genome needs {expected} genes, got {got}")]
    GenomeLength { kind: &'static str, expected: usize, got: usize },

    #[error("gene {index} = {value} outside [{low}, {high}]")]
    GeneOutOfBounds { index: usize, value: f64, low: f64, high: f64 },

    #[error("year index {index} outside 1..={horizon}")]
    YearOutOfRange { index: usize, horizon: usize },

    #[error("malformed policy `{0}` (expected linear:a1,a2, free:v1,...,v18 or flat:c)")]
    PolicySpec(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n")
}
