//! Global mass audits and the hydrodynamic convergence sweeps.

use super::ensemble::ordered_draws;
use super::report::{Method, VerificationReport};
use super::stats::{covariance, mean_var, variance_std_error};
use crate::error::{invalid, Result};
use crate::exact::{
    boundary_density, hydro_density, hydro_params, interior_density, interior_density_rotated,
    vertex_mass, Side,
};
use crate::motion::{sample_path, sample_planar_decomposed_fast, ModelParams};
use crate::quadrature::Quadrature;
use crate::rng::derive_stream;
use rayon::prelude::*;
use serde::Serialize;

/// Mass of every part of the law at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassBudget {
    pub interior: f64,
    pub open_sides: f64,
    pub vertices: f64,
}

impl MassBudget {
    pub fn total(&self) -> f64 {
        self.interior + self.open_sides + self.vertices
    }
}

/// Integrates the interior density over the square (nested adaptive
/// quadrature in the rotated coordinates) and the line densities over the
/// four sides, and adds the vertex atoms.
pub fn mass_budget(params: &ModelParams, t: f64) -> Result<MassBudget> {
    let ct = params.c * t;
    let q = Quadrature::with_tolerance(1e-10, 1e-14);
    let interior = q
        .try_integrate(
            |xi| {
                q.try_integrate(|eta| interior_density_rotated(params, xi, eta, t), -ct, ct)
                    .map(|r| 0.5 * r.value)
            },
            -ct,
            ct,
        )?
        .value;
    let mut open_sides = 0.0;
    for side in Side::ALL {
        open_sides += q
            .try_integrate(|eta| boundary_density(params, eta, t, side), -ct, ct)?
            .value;
    }
    Ok(MassBudget {
        interior,
        open_sides,
        vertices: 4.0 * vertex_mass(params, t),
    })
}

/// Total mass of the law, expected to be 1 within `1e-6`.
pub fn normalization_audit(params: &ModelParams, t: f64) -> VerificationReport {
    let name = format!(
        "normalization[lambda={},p={},c={},t={}]",
        params.lambda, params.p, params.c, t
    );
    match mass_budget(params, t) {
        Ok(b) => VerificationReport::new(name, b.total(), 1.0, 1e-6, Method::Quadrature),
        Err(_) => VerificationReport::broken(name, Method::Quadrature),
    }
}

/// Settings of a hydrodynamic sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct HydroSweepConfig {
    pub p: f64,
    pub t: f64,
    /// Speeds `c`; the intensity is `c^2`.
    pub scales: Vec<f64>,
    /// Decomposed samples per scale for the moment checks.
    pub n_samples: u64,
    pub seed: u64,
    /// Points per axis of the grid `|x|, |y| <= 3 sqrt(t)`.
    pub grid_points: usize,
}

/// Measurements at one scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydroScale {
    pub scale: f64,
    pub sup_distance: f64,
    pub variance_x: f64,
    pub variance_x_se: f64,
    pub correlation: f64,
    pub correlation_se: f64,
    /// Exact moments of the motion at this scale.
    pub exact_variance: f64,
    pub exact_correlation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HydroSweep {
    pub p: f64,
    pub t: f64,
    pub limit_variance: f64,
    pub limit_correlation: f64,
    pub scales: Vec<HydroScale>,
    pub reports: Vec<VerificationReport>,
}

fn sup_distance(params: &ModelParams, t: f64, n: usize) -> Result<f64> {
    let half = 3.0 * t.sqrt();
    let mut d: f64 = 0.0;
    for i in 0..n {
        let x = -half + 2.0 * half * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let y = -half + 2.0 * half * j as f64 / (n - 1) as f64;
            // the law has no density off the open square
            let f = if x.abs() + y.abs() < params.c * t {
                interior_density(params, x, y, t)?
            } else {
                0.0
            };
            let g = hydro_density(params.p, x, y, t)?;
            d = d.max((f - g).abs());
        }
    }
    Ok(d)
}

/// Interior density against the Gaussian limit along `c -> inf`,
/// `lambda = c^2`.
///
/// Reports, per scale, the sample variance and correlation of decomposed
/// samples against the exact moments at that scale (4 standard errors), at
/// the largest scale the same moments against the limit, and the number of
/// scale steps at which the density distance fails to decrease.
pub fn hydro_sweep(cfg: &HydroSweepConfig) -> Result<HydroSweep> {
    if cfg.scales.len() < 2 || cfg.grid_points < 2 || cfg.n_samples < 2 {
        return Err(invalid("a sweep needs two scales, a grid and samples"));
    }
    let limit = hydro_params(cfg.p, cfg.t)?;
    let mut scales = Vec::new();
    let mut reports = Vec::new();
    for (k, &c) in cfg.scales.iter().enumerate() {
        let params = ModelParams::new(c * c, cfg.p, c)?;
        let sup = sup_distance(&params, cfg.t, cfg.grid_points)?;
        let t = cfg.t;
        let pts = ordered_draws(cfg.n_samples, cfg.seed.wrapping_add(k as u64), |rng| {
            sample_planar_decomposed_fast(&params, t, rng)
        });
        let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
        let (_, var_x) = mean_var(&xs);
        let (_, var_y) = mean_var(&ys);
        let corr = covariance(&xs, &ys) / (var_x * var_y).sqrt();
        let n = cfg.n_samples as f64;
        let var_u = params.diagonal_component().variance(t);
        let var_v = params.antidiagonal_component().variance(t);
        let row = HydroScale {
            scale: c,
            sup_distance: sup,
            variance_x: var_x,
            variance_x_se: variance_std_error(&xs),
            correlation: corr,
            correlation_se: (1.0 - corr * corr) / n.sqrt(),
            exact_variance: var_u + var_v,
            exact_correlation: (var_u - var_v) / (var_u + var_v),
        };
        let tag = format!("p={},c={}", cfg.p, c);
        reports.push(VerificationReport::new(
            format!("hydro.variance_exact[{tag}]"),
            row.variance_x,
            row.exact_variance,
            4.0 * row.variance_x_se,
            Method::MonteCarlo,
        ));
        reports.push(VerificationReport::new(
            format!("hydro.correlation_exact[{tag}]"),
            row.correlation,
            row.exact_correlation,
            4.0 * row.correlation_se,
            Method::MonteCarlo,
        ));
        scales.push(row);
    }
    let last = scales.last().expect("at least two scales");
    let tag = format!("p={},c={}", cfg.p, last.scale);
    reports.push(VerificationReport::new(
        format!("hydro.variance_limit[{tag}]"),
        last.variance_x,
        limit.variance(),
        4.0 * last.variance_x_se,
        Method::MonteCarlo,
    ));
    reports.push(VerificationReport::new(
        format!("hydro.correlation_limit[{tag}]"),
        last.correlation,
        limit.correlation,
        4.0 * last.correlation_se,
        Method::MonteCarlo,
    ));
    let non_decreasing = scales
        .windows(2)
        .filter(|w| !(w[1].sup_distance < w[0].sup_distance))
        .count();
    reports.push(VerificationReport::new(
        format!("hydro.density_distance_non_decreasing_steps[p={}]", cfg.p),
        non_decreasing as f64,
        0.0,
        0.0,
        Method::Quadrature,
    ));
    Ok(HydroSweep {
        p: cfg.p,
        t: cfg.t,
        limit_variance: limit.variance(),
        limit_correlation: limit.correlation,
        scales,
        reports,
    })
}

/// Measurements of the occupation time at one intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OccupationScale {
    pub lambda: f64,
    pub mean: f64,
    pub mean_se: f64,
    pub variance: f64,
    pub variance_se: f64,
    /// `(2 lambda t - 1 + e^{-2 lambda t}) / (8 lambda^2)`.
    pub exact_variance: f64,
}

/// Occupation time of directly simulated paths as `lambda` grows at fixed
/// `t`: the mean stays at `t/2` and the variance decreases to 0.
pub fn occupation_sweep(
    lambdas: &[f64],
    t: f64,
    n_paths: u64,
    seed: u64,
) -> Result<(Vec<OccupationScale>, Vec<VerificationReport>)> {
    if lambdas.len() < 2 || n_paths < 2 {
        return Err(invalid("an occupation sweep needs two intensities and samples"));
    }
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (k, &lambda) in lambdas.iter().enumerate() {
        // p plays no role in the occupation time
        let params = ModelParams::new(lambda, 0.5, 1.0)?;
        let run_seed = seed.wrapping_add(k as u64);
        let occ: Vec<f64> = (0..n_paths)
            .into_par_iter()
            .map(|i| sample_path(&params, t, &mut derive_stream(run_seed, i)).occupation_vertical())
            .collect();
        let (mean, var) = mean_var(&occ);
        let n = n_paths as f64;
        let lt = lambda * t;
        let row = OccupationScale {
            lambda,
            mean,
            mean_se: (var / n).sqrt(),
            variance: var,
            variance_se: variance_std_error(&occ),
            exact_variance: (2.0 * lt - 1.0 + (-2.0 * lt).exp()) / (8.0 * lambda * lambda),
        };
        reports.push(VerificationReport::new(
            format!("occupation_sweep.mean[lambda={lambda}]"),
            row.mean,
            0.5 * t,
            4.0 * row.mean_se,
            Method::MonteCarlo,
        ));
        reports.push(VerificationReport::new(
            format!("occupation_sweep.variance[lambda={lambda}]"),
            row.variance,
            row.exact_variance,
            4.0 * row.variance_se,
            Method::MonteCarlo,
        ));
        rows.push(row);
    }
    let non_decreasing = rows
        .windows(2)
        .filter(|w| !(w[1].variance < w[0].variance))
        .count();
    reports.push(VerificationReport::new(
        "occupation_sweep.variance_non_decreasing_steps",
        non_decreasing as f64,
        0.0,
        0.0,
        Method::MonteCarlo,
    ));
    Ok((rows, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::boundary_mass_total;

    #[test]
    fn audits_on_reference_configurations() {
        for &(lambda, p, c, t) in &[(1.0, 0.3, 1.0, 1.0), (4.0, 0.9, 2.0, 0.5)] {
            let pr = ModelParams::new(lambda, p, c).unwrap();
            let r = normalization_audit(&pr, t);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn short_times_are_dominated_by_the_boundary() {
        let pr = ModelParams::new(1.0, 0.3, 1.0).unwrap();
        let b = mass_budget(&pr, 0.01).unwrap();
        assert!(b.interior >= 0.0);
        assert!(b.interior <= 1.0 - boundary_mass_total(&pr, 0.01) + 1e-6);
        assert!((b.total() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn small_sweep() {
        let cfg = HydroSweepConfig {
            p: 0.5,
            t: 1.0,
            scales: vec![5.0, 10.0],
            n_samples: 20_000,
            seed: 3,
            grid_points: 11,
        };
        let sweep = hydro_sweep(&cfg).unwrap();
        assert_eq!(sweep.limit_correlation, 0.0);
        assert!(sweep.scales[1].sup_distance < sweep.scales[0].sup_distance);
        assert!(sweep.reports.iter().all(|r| r.passed), "{:#?}", sweep.reports);
    }
}
