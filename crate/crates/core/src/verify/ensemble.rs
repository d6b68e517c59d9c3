//! Monte Carlo ensembles of the planar motion.
//!
//! Path `i` always uses stream `i` of the run seed and per-path results are
//! collected in index order before any reduction, so every summary is
//! bit-identical whatever the number of worker threads.

use super::stats::{empirical_cf, EmpiricalCf};
use crate::error::{invalid, Result};
use crate::motion::{sample_path, BoundaryClass, ModelParams, PlanarPoint};
use crate::rng::derive_stream;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Bins per axis of the interior histogram.
pub const HISTOGRAM_BINS: usize = 64;

/// What one simulated path contributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOutcome {
    pub point: PlanarPoint,
    pub class: BoundaryClass,
    pub occupation: f64,
    pub switches: usize,
}

/// Simulates paths `0..n_paths` of the run keyed by `seed`.
pub fn simulate_outcomes(params: &ModelParams, t: f64, n_paths: u64, seed: u64) -> Vec<PathOutcome> {
    (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_stream(seed, i);
            let path = sample_path(params, t, &mut rng);
            PathOutcome {
                point: path.position_at(params, t).expect("t is the horizon"),
                class: path.classify_boundary(),
                occupation: path.occupation_vertical(),
                switches: path.switch_count(),
            }
        })
        .collect()
}

/// Draws `n` values, value `i` from stream `i`, in index order.
pub fn ordered_draws<T, F>(n: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut crate::rng::Stream) -> T + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| f(&mut derive_stream(seed, i)))
        .collect()
}

/// Counts on a regular grid in the rotated coordinates `(x + y, x - y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram2d {
    pub xi_edges: Vec<f64>,
    pub eta_edges: Vec<f64>,
    /// Row-major, `counts[i * eta_bins + j]` for `xi` bin `i`, `eta` bin `j`.
    pub counts: Vec<u64>,
}

impl Histogram2d {
    pub fn new(half_width: f64, bins: usize) -> Self {
        let edges: Vec<f64> = (0..=bins)
            .map(|k| -half_width + 2.0 * half_width * k as f64 / bins as f64)
            .collect();
        Histogram2d {
            xi_edges: edges.clone(),
            eta_edges: edges,
            counts: vec![0; bins * bins],
        }
    }

    fn bin(edges: &[f64], v: f64) -> Option<usize> {
        let n = edges.len() - 1;
        let (lo, hi) = (edges[0], edges[n]);
        if !(v >= lo && v < hi) {
            return None;
        }
        Some((((v - lo) / (hi - lo) * n as f64) as usize).min(n - 1))
    }

    pub fn add(&mut self, xi: f64, eta: f64) -> bool {
        match (Self::bin(&self.xi_edges, xi), Self::bin(&self.eta_edges, eta)) {
            (Some(i), Some(j)) => {
                self.counts[i * (self.eta_edges.len() - 1) + j] += 1;
                true
            }
            _ => false,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Where the paths ended.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BoundaryCounts {
    pub interior: u64,
    pub sides: [u64; 4],
    pub vertices: [u64; 4],
}

impl BoundaryCounts {
    pub fn add(&mut self, class: BoundaryClass) {
        match class {
            BoundaryClass::Interior => self.interior += 1,
            BoundaryClass::Side(k) => self.sides[k as usize] += 1,
            BoundaryClass::Vertex(k) => self.vertices[k as usize] += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.interior + self.sides.iter().sum::<u64>() + self.vertices.iter().sum::<u64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfGridPoint {
    pub alpha: f64,
    pub beta: f64,
    pub value: [f64; 2],
    pub std_error: f64,
}

impl CfGridPoint {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub params: ModelParams,
    pub t: f64,
    pub n_paths: u64,
    pub seed: u64,
    /// Interior end points only.
    pub binned_counts: Histogram2d,
    pub boundary_counts: BoundaryCounts,
    #[serde(skip)]
    pub occupation_samples: Vec<f64>,
    pub empirical_cf_grid: Vec<CfGridPoint>,
}

/// Simulates `n_paths` paths and reduces them to an [`EnsembleSummary`].
pub fn run_ensemble(
    params: &ModelParams,
    t: f64,
    n_paths: u64,
    seed: u64,
    cf_grid: &[(f64, f64)],
) -> Result<EnsembleSummary> {
    if n_paths == 0 {
        return Err(invalid("an ensemble needs at least one path"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    let outcomes = simulate_outcomes(params, t, n_paths, seed);
    Ok(summarize(params, t, seed, &outcomes, cf_grid))
}

/// Reduces already simulated outcomes.
pub fn summarize(
    params: &ModelParams,
    t: f64,
    seed: u64,
    outcomes: &[PathOutcome],
    cf_grid: &[(f64, f64)],
) -> EnsembleSummary {
    let mut hist = Histogram2d::new(params.c * t, HISTOGRAM_BINS);
    let mut counts = BoundaryCounts::default();
    for o in outcomes {
        counts.add(o.class);
        if o.class == BoundaryClass::Interior {
            let (xi, eta) = o.point.rotated();
            hist.add(xi, eta);
        }
    }
    let points: Vec<(f64, f64)> = outcomes.iter().map(|o| (o.point.x, o.point.y)).collect();
    let empirical_cf_grid = cf_grid
        .iter()
        .map(|&(alpha, beta)| {
            let EmpiricalCf { value, std_error } =
                empirical_cf(&points, alpha, beta).expect("ensembles are nonempty");
            CfGridPoint {
                alpha,
                beta,
                value: [value.re, value.im],
                std_error,
            }
        })
        .collect();
    EnsembleSummary {
        params: *params,
        t,
        n_paths: outcomes.len() as u64,
        seed,
        binned_counts: hist,
        boundary_counts: counts,
        occupation_samples: outcomes.iter().map(|o| o.occupation).collect(),
        empirical_cf_grid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.3, 1.0).unwrap()
    }

    #[test]
    fn conservation_and_ranges() {
        let s = run_ensemble(&params(), 1.0, 20_000, 5, &[(0.0, 0.0), (1.0, -0.5)]).unwrap();
        assert_eq!(s.boundary_counts.total(), 20_000);
        assert_eq!(s.binned_counts.total(), s.boundary_counts.interior);
        assert_eq!(s.binned_counts.xi_edges.len(), HISTOGRAM_BINS + 1);
        assert!(s.occupation_samples.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert_eq!(s.empirical_cf_grid[0].value, [1.0, 0.0]);
        assert!(run_ensemble(&params(), 1.0, 0, 5, &[]).is_err());
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_ensemble(&params(), 1.0, 5_000, 99, &[(1.0, 3.0)]).unwrap())
        };
        let a = run(1);
        let b = run(3);
        assert_eq!(a, b);
        assert_eq!(a.occupation_samples, b.occupation_samples);
    }

    #[test]
    fn histogram_bins() {
        let mut h = Histogram2d::new(1.0, 4);
        assert!(h.add(-1.0, 0.99));
        assert!(!h.add(1.0, 0.0));
        assert!(h.add(0.0, -0.6));
        assert_eq!(h.counts[3], 1);
        assert_eq!(h.counts[2 * 4], 1);
    }
}
