//! NSGA-II (non-dominated sorting genetic algorithm II) for real-valued genomes.
//!
//! The crate is independent of any particular problem: callers hand
//! [`evolve`] a fitness closure returning a vector of objectives to minimize,
//! a box of per-gene bounds and a [`GaConfig`]. Every generation is archived
//! so the whole run can be exported and replayed.
//!
//! Two analytic test problems ([`benchmarks::Schaffer`] and
//! [`benchmarks::Zdt1`]) ship with the crate for self-validation.

pub mod algorithm;
pub mod benchmarks;
pub mod config;
pub mod dominance;
pub mod error;
pub mod operators;

pub use algorithm::{evolve, FrontArchive, Individual, Snapshot};
pub use config::{Bounds, GaConfig, MutationKind};
pub use dominance::{crowded_compare, crowding_distance, dominates, fast_non_dominated_sort};
pub use error::{OptimError, Result};
