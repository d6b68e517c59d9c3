//! Two independent routes to the density of the vertical occupation time.
//!
//! * [`occupation_density_oracle`] conditions on the number of switches:
//!   given `n` switches the `n + 1` runs are uniform spacings of `[0, t]`
//!   and the runs alternate between horizontal and vertical, so the
//!   vertical time is `t` times a Beta variable.
//! * [`cf_invert_occupation`] inverts the closed-form characteristic
//!   function.
//!
//! Neither uses the closed-form density of `exact::occupation`.

use crate::error::{domain, invalid, Error, Result};
use crate::exact::occupation_cf;
use statrs::function::gamma::ln_gamma;

fn ln_beta_pdf(x: f64, a: f64, b: f64) -> f64 {
    (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() + ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
}

/// Continuous part of the occupation-time density at `s` in `(0, t)`, by
/// the Poisson mixture of Beta laws.
///
/// Summation stops once the neglected Poisson mass is below `eps`.
pub fn occupation_density_oracle(lambda: f64, s: f64, t: f64, eps: f64) -> Result<f64> {
    if !(lambda > 0.0 && t > 0.0 && eps > 0.0) {
        return Err(invalid("lambda, t and eps must be positive"));
    }
    if !(s > 0.0 && s < t) {
        return Err(domain(format!("s must lie in (0, {t}), got {s}")));
    }
    let mean = lambda * t;
    let x = s / t;
    let ln_mean = mean.ln();
    let mut cumulative = (-mean).exp();
    let mut sum = 0.0;
    let mut n: u64 = 1;
    loop {
        let nf = n as f64;
        let ln_pmf = -mean + nf * ln_mean - ln_gamma(nf + 1.0);
        let runs = nf + 1.0;
        // vertical runs when the first run is horizontal, resp. vertical
        let k_h = (runs / 2.0).floor();
        let k_v = (runs / 2.0).ceil();
        let from_h = (ln_pmf + ln_beta_pdf(x, k_h, runs - k_h)).exp();
        let from_v = (ln_pmf + ln_beta_pdf(x, k_v, runs - k_v)).exp();
        sum += 0.5 * (from_h + from_v);
        let pmf = ln_pmf.exp();
        cumulative += pmf;
        if cumulative >= 1.0 - eps {
            break;
        }
        // geometric bound on the remaining mass once past the mode
        if nf + 1.0 > mean && pmf * (nf + 1.0) / (nf + 1.0 - mean) < eps {
            break;
        }
        n += 1;
        if n > 10_000_000 {
            return Err(Error::NonConvergence {
                what: "Poisson-Beta series".into(),
                error: 1.0 - cumulative,
                requested: eps,
            });
        }
    }
    Ok(sum / t)
}

/// Number of cosine coefficients used by [`cf_invert_occupation`]; the
/// result is checked against twice as many.
pub const INVERSION_TERMS: usize = 2048;

/// Accuracy demanded from the doubling check of [`cf_invert_occupation`].
pub const INVERSION_TOLERANCE: f64 = 1e-9;

/// `sum_{k >= 1} cos(k x) / k^2` for `x` in `[0, 2 pi]`.
fn clausen_cos2(x: f64) -> f64 {
    use std::f64::consts::PI;
    PI * PI / 6.0 - PI * x / 2.0 + x * x / 4.0
}

/// Cosine-series inversion with `terms` coefficients.
fn cosine_inversion(lambda: f64, t: f64, s_grid: &[f64], terms: usize) -> Vec<f64> {
    use std::f64::consts::PI;
    let atom = 0.5 * (-lambda * t).exp();
    // A_k = (2/t) Re phi_c(k pi / t), phi_c the transform of the continuous part
    let coeff: Vec<f64> = (0..=terms)
        .map(|k| {
            let alpha = k as f64 * PI / t;
            let phi = occupation_cf(lambda, alpha, t);
            let atoms_re = atom * (1.0 + (alpha * t).cos());
            2.0 / t * (phi.re - atoms_re)
        })
        .collect();
    // the density is smooth on [0, t] with nonzero end slopes, so
    // A_k k^2 -> e + o (-1)^k; fit e, o on the last two coefficients and sum
    // the tail in closed form
    let kk = terms as f64;
    let sign = if terms % 2 == 0 { 1.0 } else { -1.0 };
    let last = coeff[terms] * kk * kk;
    let prev = coeff[terms - 1] * (kk - 1.0) * (kk - 1.0);
    let even = 0.5 * (last + prev);
    let odd = 0.5 * (last - prev) * sign;
    s_grid
        .iter()
        .map(|&s| {
            let x = PI * s / t;
            let mut head = 0.5 * coeff[0];
            let mut tail_e = clausen_cos2(x);
            let mut tail_o = clausen_cos2(x + PI);
            for (k, &a) in coeff.iter().enumerate().skip(1) {
                let kf = k as f64;
                let c = (kf * x).cos();
                head += a * c;
                let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
                tail_e -= c / (kf * kf);
                tail_o -= sgn * c / (kf * kf);
            }
            head + even * tail_e + odd * tail_o
        })
        .collect()
}

/// Continuous part of the occupation-time density on `s_grid`, recovered
/// from the characteristic function with the two atoms removed.
///
/// The transform of the continuous part is sampled at `alpha = k pi / t`,
/// which gives the cosine coefficients of the density on `[0, t]` exactly.
/// An error is returned if doubling the number of terms moves any value by
/// more than [`INVERSION_TOLERANCE`].
pub fn cf_invert_occupation(lambda: f64, t: f64, s_grid: &[f64]) -> Result<Vec<f64>> {
    if !(lambda > 0.0 && t > 0.0) {
        return Err(invalid("lambda and t must be positive"));
    }
    if let Some(&s) = s_grid.iter().find(|&&s| !(s > 0.0 && s < t)) {
        return Err(domain(format!("grid point {s} outside (0, {t})")));
    }
    let coarse = cosine_inversion(lambda, t, s_grid, INVERSION_TERMS);
    let fine = cosine_inversion(lambda, t, s_grid, 2 * INVERSION_TERMS);
    let gap = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if !(gap <= INVERSION_TOLERANCE) {
        return Err(Error::NonConvergence {
            what: "characteristic function inversion".into(),
            error: gap,
            requested: INVERSION_TOLERANCE,
        });
    }
    Ok(fine)
}
