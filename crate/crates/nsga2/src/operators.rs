//! Variation and selection operators.
//!
//! Random draws happen in a fixed order per call so that a seeded generator
//! reproduces the same offspring regardless of how evaluation is scheduled.

use std::cmp::Ordering;

use rand::Rng;

use crate::algorithm::Individual;
use crate::config::{GaConfig, MutationKind};
use crate::dominance::crowded_compare;

const SBX_EPS: f64 = 1.0e-14;

/// Picks two members uniformly (with replacement) and returns the index of
/// the crowded-comparison winner; ties go to the lower index.
pub fn binary_tournament<R: Rng + ?Sized>(population: &[Individual], rng: &mut R) -> usize {
    assert!(!population.is_empty(), "tournament on an empty population");
    let i = rng.gen_range(0..population.len());
    let j = rng.gen_range(0..population.len());
    match crowded_compare(&population[i], &population[j]) {
        Ordering::Less => i,
        Ordering::Greater => j,
        Ordering::Equal => i.min(j),
    }
}

/// Simulated binary crossover with bound-aware spread factors.
///
/// With probability `crossover_probability` each gene is recombined with
/// probability one half; otherwise both children copy their parents.
/// Children are clamped to `bounds`.
pub fn sbx_crossover<R: Rng + ?Sized>(
    parent1: &[f64],
    parent2: &[f64],
    bounds: &[(f64, f64)],
    rng: &mut R,
    cfg: &GaConfig,
) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(parent1.len(), parent2.len());
    let mut child1 = parent1.to_vec();
    let mut child2 = parent2.to_vec();
    if rng.gen::<f64>() >= cfg.crossover_probability {
        return (child1, child2);
    }

    let exponent = 1.0 / (cfg.eta_c + 1.0);
    for (g, &(lower, upper)) in bounds.iter().enumerate() {
        if rng.gen::<f64>() > 0.5 {
            continue;
        }
        let (a, b) = (parent1[g], parent2[g]);
        if (a - b).abs() <= SBX_EPS {
            continue;
        }
        let (y1, y2) = if a < b { (a, b) } else { (b, a) };
        let u: f64 = rng.gen();

        let spread_factor = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(cfg.eta_c + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(exponent)
            } else {
                (1.0 / (2.0 - u * alpha)).powf(exponent)
            }
        };

        let beta_low = 1.0 + 2.0 * (y1 - lower) / (y2 - y1);
        let c1 = 0.5 * ((y1 + y2) - spread_factor(beta_low) * (y2 - y1));
        let beta_high = 1.0 + 2.0 * (upper - y2) / (y2 - y1);
        let c2 = 0.5 * ((y1 + y2) + spread_factor(beta_high) * (y2 - y1));
        let c1 = c1.clamp(lower, upper);
        let c2 = c2.clamp(lower, upper);

        if rng.gen::<f64>() <= 0.5 {
            child1[g] = c2;
            child2[g] = c1;
        } else {
            child1[g] = c1;
            child2[g] = c2;
        }
    }
    clamp_to_bounds(&mut child1, bounds);
    clamp_to_bounds(&mut child2, bounds);
    (child1, child2)
}

/// Uniform-reset mutation. Returns the number of genes that were resampled
/// (a resample can land on a value close to the old one).
pub fn mutate<R: Rng + ?Sized>(
    genome: &mut [f64],
    bounds: &[(f64, f64)],
    rng: &mut R,
    cfg: &GaConfig,
) -> usize {
    let p = cfg.mutation_probability;
    match cfg.mutation_kind {
        MutationKind::PerGene => {
            let mut resampled = 0;
            for (gene, &(lower, upper)) in genome.iter_mut().zip(bounds) {
                if rng.gen::<f64>() < p {
                    *gene = sample_uniform(lower, upper, rng);
                    resampled += 1;
                }
            }
            resampled
        }
        MutationKind::PerChild => {
            if genome.is_empty() || rng.gen::<f64>() >= p {
                return 0;
            }
            let g = rng.gen_range(0..genome.len());
            let (lower, upper) = bounds[g];
            genome[g] = sample_uniform(lower, upper, rng);
            1
        }
        MutationKind::Polynomial => {
            let mut mutated = 0;
            for (gene, &(lower, upper)) in genome.iter_mut().zip(bounds) {
                if rng.gen::<f64>() < p {
                    *gene = polynomial_step(*gene, lower, upper, cfg.eta_m, rng);
                    mutated += 1;
                }
            }
            mutated
        }
    }
}

fn polynomial_step<R: Rng + ?Sized>(y: f64, lower: f64, upper: f64, eta_m: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    let range = upper - lower;
    if range <= 0.0 {
        return lower;
    }
    let delta1 = (y - lower) / range;
    let delta2 = (upper - y) / range;
    let power = 1.0 / (eta_m + 1.0);
    let deltaq = if u < 0.5 {
        let xy = 1.0 - delta1;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta_m + 1.0);
        val.powf(power) - 1.0
    } else {
        let xy = 1.0 - delta2;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta_m + 1.0);
        1.0 - val.powf(power)
    };
    (y + deltaq * range).clamp(lower, upper)
}

pub(crate) fn sample_uniform<R: Rng + ?Sized>(lower: f64, upper: f64, rng: &mut R) -> f64 {
    if lower == upper {
        lower
    } else {
        rng.gen_range(lower..=upper)
    }
}

/// Clamps each gene into its bounds in place.
pub fn clamp_to_bounds(genome: &mut [f64], bounds: &[(f64, f64)]) {
    for (gene, &(lower, upper)) in genome.iter_mut().zip(bounds) {
        *gene = gene.clamp(lower, upper);
    }
}
