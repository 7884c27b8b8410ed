//! The NSGA-II generational loop.
//!
//! Each generation builds `N` children by binary tournament, SBX and
//! mutation, evaluates them, merges them with the parents and keeps the best
//! `N` of the merged pool front by front. Within the front that overflows,
//! members with the largest crowding distance are kept.
//!
//! All random draws come from one ChaCha8 stream in this order: initial
//! genomes (individual by individual, gene by gene), then per generation and
//! per child pair: tournament A, tournament B, crossover, mutation of child 1,
//! mutation of child 2. Fitness evaluation draws nothing, so running it on a
//! thread pool cannot change the result.

use std::fmt::Display;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{validate_bounds, GaConfig};
use crate::dominance::{crowded_compare, crowding_distance, fast_non_dominated_sort};
use crate::error::{OptimError, Result};
use crate::operators::{binary_tournament, mutate, sample_uniform, sbx_crossover};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub genome: Vec<f64>,
    /// Objective values, all minimized.
    pub objectives: Vec<f64>,
    /// Front index starting at 1 (1 = non-dominated).
    pub rank: usize,
    /// Crowding distance within the individual's front; `+inf` on boundaries.
    pub crowding: f64,
}

/// One archived population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub generation: usize,
    pub population: Vec<Individual>,
}

/// Every generation of a run, including the initial population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontArchive {
    pub generations: Vec<Snapshot>,
    /// Rank-1 members of the final population.
    pub final_front: Vec<Individual>,
}

impl FrontArchive {
    pub fn last(&self) -> &Snapshot {
        self.generations.last().expect("archive always holds the initial population")
    }
}

/// Runs NSGA-II for `cfg.generations` generations.
///
/// `fitness` must be a pure function of the genome. Evaluations run on the
/// current rayon pool and are merged in population order.
pub fn evolve<F, E>(fitness: F, bounds: &[(f64, f64)], cfg: &GaConfig) -> Result<FrontArchive>
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E> + Sync,
    E: Display,
{
    cfg.validate()?;
    validate_bounds(bounds)?;
    let n = cfg.population_size;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let initial: Vec<Vec<f64>> = (0..n)
        .map(|_| bounds.iter().map(|&(lo, hi)| sample_uniform(lo, hi, &mut rng)).collect())
        .collect();
    let mut objective_count = None;
    let mut population = evaluate(&fitness, initial, &mut objective_count)?;
    assign_rank_and_crowding(&mut population);

    let mut generations = Vec::with_capacity(cfg.generations + 1);
    generations.push(Snapshot { generation: 0, population: population.clone() });

    for t in 1..=cfg.generations {
        let mut children = Vec::with_capacity(n);
        while children.len() < n {
            let a = binary_tournament(&population, &mut rng);
            let b = binary_tournament(&population, &mut rng);
            let (mut c1, mut c2) = sbx_crossover(
                &population[a].genome,
                &population[b].genome,
                bounds,
                &mut rng,
                cfg,
            );
            mutate(&mut c1, bounds, &mut rng, cfg);
            mutate(&mut c2, bounds, &mut rng, cfg);
            children.push(c1);
            children.push(c2);
        }
        let offspring = evaluate(&fitness, children, &mut objective_count)?;

        let mut merged = population;
        merged.extend(offspring);
        population = select_survivors(merged, n);
        generations.push(Snapshot { generation: t, population: population.clone() });
    }

    let final_front = population.iter().filter(|ind| ind.rank == 1).cloned().collect();
    Ok(FrontArchive { generations, final_front })
}

fn evaluate<F, E>(
    fitness: &F,
    genomes: Vec<Vec<f64>>,
    objective_count: &mut Option<usize>,
) -> Result<Vec<Individual>>
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E> + Sync,
    E: Display,
{
    let results: Vec<std::result::Result<Vec<f64>, String>> = genomes
        .par_iter()
        .map(|g| fitness(g).map_err(|e| e.to_string()))
        .collect();

    let mut out = Vec::with_capacity(genomes.len());
    for (genome, result) in genomes.into_iter().zip(results) {
        let objectives = match result {
            Ok(o) => o,
            Err(message) => return Err(OptimError::Fitness { genome, message }),
        };
        let expected = *objective_count.get_or_insert(objectives.len());
        if objectives.is_empty() || objectives.len() != expected {
            let message = format!(
                "expected {expected} objectives, got {}",
                objectives.len()
            );
            return Err(OptimError::Fitness { genome, message });
        }
        if let Some(bad) = objectives.iter().find(|v| !v.is_finite()) {
            let message = format!("non-finite objective {bad}");
            return Err(OptimError::Fitness { genome, message });
        }
        out.push(Individual { genome, objectives, rank: 0, crowding: 0.0 });
    }
    Ok(out)
}

/// Assigns front ranks and per-front crowding distances in place and returns
/// the fronts as index lists.
pub fn assign_rank_and_crowding(population: &mut [Individual]) -> Vec<Vec<usize>> {
    let objectives: Vec<&[f64]> = population.iter().map(|i| i.objectives.as_slice()).collect();
    let fronts = fast_non_dominated_sort(&objectives);
    let mut crowding = vec![0.0; population.len()];
    for front in &fronts {
        let members: Vec<&[f64]> = front.iter().map(|&i| objectives[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&members)) {
            crowding[i] = d;
        }
    }
    for (rank, front) in fronts.iter().enumerate() {
        for &i in front {
            population[i].rank = rank + 1;
            population[i].crowding = crowding[i];
        }
    }
    fronts
}

/// Elitist truncation of a merged pool down to `n` members.
fn select_survivors(mut merged: Vec<Individual>, n: usize) -> Vec<Individual> {
    let fronts = assign_rank_and_crowding(&mut merged);
    let mut chosen: Vec<usize> = Vec::with_capacity(merged.len());
    for front in &fronts {
        if chosen.len() >= n {
            break;
        }
        chosen.extend_from_slice(front);
    }
    // Stable sort: equal rank and distance keep merged-pool order.
    chosen.sort_by_key(|&i| i);
    chosen.sort_by(|&a, &b| crowded_compare(&merged[a], &merged[b]));
    chosen.truncate(n);

    let mut slots: Vec<Option<Individual>> = merged.into_iter().map(Some).collect();
    chosen.into_iter().map(|i| slots[i].take().expect("index chosen once")).collect()
}
