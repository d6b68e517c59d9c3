//! Gaussian limit of the motion when `lambda, c -> inf` with `lambda / c^2 -> 1`.

use crate::error::{invalid, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianLimit {
    /// `t / (4 p (1 - p)) [[1, 2p - 1], [2p - 1, 1]]`
    pub covariance: [[f64; 2]; 2],
    pub correlation: f64,
}

impl GaussianLimit {
    pub fn variance(&self) -> f64 {
        self.covariance[0][0]
    }

    pub fn determinant(&self) -> f64 {
        let s = &self.covariance;
        s[0][0] * s[1][1] - s[0][1] * s[1][0]
    }
}

fn check(p: f64, t: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("p must lie in (0, 1), got {p}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    Ok(())
}

pub fn hydro_params(p: f64, t: f64) -> Result<GaussianLimit> {
    check(p, t)?;
    let var = t / (4.0 * p * (1.0 - p));
    let rho = 2.0 * p - 1.0;
    Ok(GaussianLimit {
        covariance: [[var, rho * var], [rho * var, var]],
        correlation: rho,
    })
}

/// `sqrt(p (1 - p)) / (pi t) exp(-(x^2 + y^2 + 2xy (1 - 2p)) / (2t))`.
pub fn hydro_density(p: f64, x: f64, y: f64, t: f64) -> Result<f64> {
    check(p, t)?;
    let q = x * x + y * y + 2.0 * x * y * (1.0 - 2.0 * p);
    Ok((p * (1.0 - p)).sqrt() / (std::f64::consts::PI * t) * (-q / (2.0 * t)).exp())
}
