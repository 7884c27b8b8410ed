//! Pareto dominance, non-dominated sorting and crowding distance.

use std::cmp::Ordering;

use crate::algorithm::Individual;
use crate::error::{OptimError, Result};

/// `true` iff `a` is no worse than `b` in every objective and strictly better
/// in at least one (all objectives minimized).
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(OptimError::LengthMismatch(a.len(), b.len()));
    }
    Ok(dominates_unchecked(a, b))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Splits a population into successive non-dominated fronts.
///
/// Returns indices into `objectives`; front 0 is the Pareto front and each
/// front is listed in ascending index order. Every index appears in exactly
/// one front. Vectors are assumed to share one length.
pub fn fast_non_dominated_sort<V: AsRef<[f64]>>(objectives: &[V]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_set: Vec<Vec<usize>> = vec![Vec::new(); n];

    for i in 0..n {
        let a = objectives[i].as_ref();
        for j in (i + 1)..n {
            let b = objectives[j].as_ref();
            if dominates_unchecked(a, b) {
                dominates_set[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates_unchecked(b, a) {
                dominates_set[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_set[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Normalized cuboid crowding distance of each member of one front.
///
/// Boundary members of every objective get `+inf`; an objective whose range
/// over the front is zero contributes nothing. Fronts of at most two members
/// are all boundary.
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();

    for j in 0..m {
        order.sort_by(|&a, &b| front[a].as_ref()[j].total_cmp(&front[b].as_ref()[j]));
        let min = front[order[0]].as_ref()[j];
        let max = front[order[n - 1]].as_ref()[j];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = max - min;
        if range <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            let idx = order[k];
            if distance[idx].is_finite() {
                let next = front[order[k + 1]].as_ref()[j];
                let prev = front[order[k - 1]].as_ref()[j];
                distance[idx] += (next - prev) / range;
            }
        }
    }
    distance
}

/// Crowded-comparison order: lower rank first, then larger crowding distance.
///
/// `Less` means `a` is preferred. Individuals with equal rank and distance
/// compare `Equal`; callers break the tie by population index.
pub fn crowded_compare(a: &Individual, b: &Individual) -> Ordering {
    a.rank
        .cmp(&b.rank)
        .then_with(|| b.crowding.total_cmp(&a.crowding))
}
