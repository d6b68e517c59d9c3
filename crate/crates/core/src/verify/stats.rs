//! Statistical comparators used by the Monte Carlo checks.

use crate::error::{invalid, Result};
use crate::exact::occupation::OccupationCdf;
use num_complex::Complex64;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// A distribution function, possibly with atoms.
pub trait Cdf {
    /// `P(X <= x)`
    fn cdf(&self, x: f64) -> f64;

    /// `P(X < x)`; equal to [`cdf`](Cdf::cdf) for continuous laws.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

impl Cdf for OccupationCdf {
    fn cdf(&self, x: f64) -> f64 {
        self.at(x)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.left_limit(x)
    }
}

fn sorted(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(invalid("empty sample"));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(invalid("sample contains NaN"));
    }
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// `sup_x |F_n(x) - F(x)|`, evaluated on both sides of every jump so that
/// laws with atoms are handled exactly.
pub fn ks_distance<C: Cdf + ?Sized>(samples: &[f64], cdf: &C) -> Result<f64> {
    let xs = sorted(samples)?;
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        let v = xs[i];
        let mut j = i;
        while j < xs.len() && xs[j] == v {
            j += 1;
        }
        let below = i as f64 / n;
        let upto = j as f64 / n;
        d = d.max((below - cdf.cdf_left(v)).abs()).max((upto - cdf.cdf(v)).abs());
        i = j;
    }
    Ok(d)
}

/// Asymptotic Kolmogorov tail `P(D_n > d)` with Stephens' small-sample
/// correction.
pub fn kolmogorov_pvalue(d: f64, n_effective: f64) -> f64 {
    let sn = n_effective.sqrt();
    let x = (sn + 0.12 + 0.11 / sn) * d;
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
///
/// Panics on empty input.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let xa = sorted(a).expect("first sample");
    let xb = sorted(b).expect("second sample");
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let v = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] == v {
            i += 1;
        }
        while j < xb.len() && xb[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    (d, kolmogorov_pvalue(d, na * nb / (na + nb)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Bins that entered the statistic.
    pub bins: usize,
}

/// Pearson goodness of fit.
///
/// `expected` is rescaled to the observed total, then bins expecting fewer
/// than `min_expected` counts are left out.
pub fn chi_square(observed: &[u64], expected: &[f64], min_expected: f64) -> Result<ChiSquare> {
    if observed.len() != expected.len() {
        return Err(invalid("observed and expected bin counts differ in length"));
    }
    let total: f64 = observed.iter().map(|&o| o as f64).sum();
    let norm: f64 = expected.iter().sum();
    if !(total > 0.0 && norm > 0.0) {
        return Err(invalid("chi-square needs positive totals"));
    }
    let scale = total / norm;
    let mut stat = 0.0;
    let mut bins = 0;
    for (&o, &e) in observed.iter().zip(expected) {
        let e = e * scale;
        if e >= min_expected {
            stat += (o as f64 - e).powi(2) / e;
            bins += 1;
        }
    }
    if bins < 2 {
        return Err(invalid("fewer than two usable bins"));
    }
    let dof = bins - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| invalid(e.to_string()))?;
    Ok(ChiSquare {
        statistic: stat,
        dof,
        p_value: dist.sf(stat),
        bins,
    })
}

/// Sample mean and unbiased variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Sample covariance of paired values.
pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (n - 1.0)
}

/// Standard error of the sample variance, from the fourth central moment.
pub fn variance_std_error(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mean, var) = mean_var(xs);
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    ((m4 - var * var).max(0.0) / n).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalCf {
    pub value: Complex64,
    /// `sqrt((Var cos + Var sin) / n)`, the radius of one standard error.
    pub std_error: f64,
}

/// `mean exp(i (alpha x + beta y))` over the points.
pub fn empirical_cf(points: &[(f64, f64)], alpha: f64, beta: f64) -> Result<EmpiricalCf> {
    if points.is_empty() {
        return Err(crate::error::domain("empirical characteristic function of an empty sample"));
    }
    let n = points.len() as f64;
    let (mut sc, mut ss, mut sc2, mut ss2) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (s, c) = (alpha * x + beta * y).sin_cos();
        sc += c;
        ss += s;
        sc2 += c * c;
        ss2 += s * s;
    }
    let (mc, ms) = (sc / n, ss / n);
    let var = (sc2 / n - mc * mc) + (ss2 / n - ms * ms);
    Ok(EmpiricalCf {
        value: Complex64::new(mc, ms),
        std_error: (var.max(0.0) / n).sqrt(),
    })
}
