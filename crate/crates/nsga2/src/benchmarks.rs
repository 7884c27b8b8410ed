//! Analytic two-objective problems with known Pareto fronts, used to check
//! the optimizer without the market simulator.

use crate::config::Bounds;

/// A two-objective test problem whose Pareto front is a curve
/// parameterized by `t` in `[0, 1]`.
pub trait Problem: Sync {
    fn name(&self) -> &'static str;
    fn bounds(&self) -> Bounds;
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
    /// Point on the analytic front at parameter `t`.
    fn front_point(&self, t: f64) -> [f64; 2];
}

/// Schaffer's problem N.1: `f1 = x^2`, `f2 = (x - 2)^2` on `[-10, 10]`.
/// Pareto-optimal decisions are exactly `x` in `[0, 2]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Schaffer;

impl Problem for Schaffer {
    fn name(&self) -> &'static str {
        "schaffer"
    }

    fn bounds(&self) -> Bounds {
        vec![(-10.0, 10.0)]
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        vec![x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0)]
    }

    fn front_point(&self, t: f64) -> [f64; 2] {
        let x = 2.0 * t;
        [x * x, (x - 2.0) * (x - 2.0)]
    }
}

/// ZDT1 with `n` decision variables in `[0, 1]`; front `f2 = 1 - sqrt(f1)`.
#[derive(Debug, Clone, Copy)]
pub struct Zdt1 {
    pub variables: usize,
}

impl Default for Zdt1 {
    fn default() -> Self {
        Self { variables: 30 }
    }
}

impl Problem for Zdt1 {
    fn name(&self) -> &'static str {
        "zdt1"
    }

    fn bounds(&self) -> Bounds {
        vec![(0.0, 1.0); self.variables]
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let f1 = x[0];
        let tail: f64 = x[1..].iter().sum();
        let g = 1.0 + 9.0 * tail / (x.len() - 1).max(1) as f64;
        let f2 = g * (1.0 - (f1 / g).sqrt());
        vec![f1, f2]
    }

    fn front_point(&self, t: f64) -> [f64; 2] {
        [t, 1.0 - t.sqrt()]
    }
}

/// Looks a benchmark up by its command-line name.
pub fn by_name(name: &str) -> Option<Box<dyn Problem>> {
    match name {
        "schaffer" => Some(Box::new(Schaffer)),
        "zdt1" => Some(Box::new(Zdt1::default())),
        _ => None,
    }
}

/// Mean Euclidean distance from each point to the analytic front.
///
/// The front is sampled on a uniform grid in `t` and each nearest sample is
/// refined by golden-section search on its neighbouring interval.
pub fn generational_distance<P: Problem + ?Sized>(problem: &P, points: &[Vec<f64>]) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    const SAMPLES: usize = 4000;
    let grid: Vec<[f64; 2]> = (0..=SAMPLES)
        .map(|k| problem.front_point(k as f64 / SAMPLES as f64))
        .collect();

    let total: f64 = points
        .iter()
        .map(|p| {
            let dist = |q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            let (best, _) = grid
                .iter()
                .enumerate()
                .map(|(k, &q)| (k, dist(q)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("grid is non-empty");
            let lo = best.saturating_sub(1) as f64 / SAMPLES as f64;
            let hi = (best + 1).min(SAMPLES) as f64 / SAMPLES as f64;
            golden_min(|t| dist(problem.front_point(t)), lo, hi)
        })
        .sum();
    total / points.len() as f64
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    f(a).min(f(b)).min(fc).min(fd)
}
