//! The singular part of the law on the sides and vertices of the square.
//!
//! Sides are numbered as in [`crate::motion::BoundaryClass`]. Even sides lie
//! on `x + y = +-ct` and are reached by pinning `U` at `+-ct/2`; odd sides
//! lie on `x - y = -+ct` and pin `V`. The coordinate along a side is
//! `eta = x - y` on even sides and `eta = x + y` on odd ones.

use super::{principal_sqrt, two_exponential_bracket};
use crate::bessel::{decayed_bracket, KernelArgs};
use crate::error::{domain, invalid, Result};
use crate::motion::ModelParams;
use num_complex::Complex64;

/// Index of a side of the support square, `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side(u8);

impl Side {
    pub const ALL: [Side; 4] = [Side(0), Side(1), Side(2), Side(3)];

    pub fn new(k: u8) -> Result<Side> {
        if k < 4 {
            Ok(Side(k))
        } else {
            Err(invalid(format!("side index must be in 0..4, got {k}")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Sides `x + y = +-ct`.
    pub fn is_diagonal(self) -> bool {
        self.0 % 2 == 0
    }

    /// `(pinned rate, free rate)`: the component held at its extreme value
    /// and the one spreading along the side.
    fn rates(self, params: &ModelParams) -> (f64, f64) {
        let lp = params.lambda * params.p;
        let lq = params.lambda * (1.0 - params.p);
        if self.is_diagonal() {
            (lq, lp)
        } else {
            (lp, lq)
        }
    }
}

/// `P((X, Y) on the boundary) = e^{-lambda t (1-p)} + e^{-lambda t p} - e^{-lambda t}`.
pub fn boundary_mass_total(params: &ModelParams, t: f64) -> f64 {
    let lt = params.lambda * t;
    (-lt * (1.0 - params.p)).exp() + (-lt * params.p).exp() - (-lt).exp()
}

/// Mass of a closed side, vertices included: `e^{-lambda t (1-p)} / 2` on
/// even sides, `e^{-lambda t p} / 2` on odd ones.
pub fn boundary_side_mass(params: &ModelParams, t: f64, side: Side) -> f64 {
    let (pinned, _) = side.rates(params);
    0.5 * (-pinned * t).exp()
}

/// Mass of a vertex, `e^{-lambda t} / 4`.
pub fn vertex_mass(params: &ModelParams, t: f64) -> f64 {
    0.25 * (-params.lambda * t).exp()
}

/// Mass of a side without its two vertices.
pub fn open_side_mass(params: &ModelParams, t: f64, side: Side) -> f64 {
    boundary_side_mass(params, t, side) - 2.0 * vertex_mass(params, t)
}

/// Line density along the open side, `|eta| < c t`.
///
/// On side 0: `e^{-lambda t}/(4c) [lambda p I0((lambda p / c) sqrt(c^2 t^2 - eta^2)) + d/dt I0(...)]`;
/// odd sides swap `p` and `1 - p`.
pub fn boundary_density(params: &ModelParams, eta: f64, t: f64, side: Side) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("time must be positive, got {t}")));
    }
    let ct = params.c * t;
    if !(eta.abs() < ct) {
        return Err(domain(format!(
            "boundary density is defined for |eta| < {ct}, got {eta}"
        )));
    }
    let (pinned, free) = side.rates(params);
    let args = KernelArgs::new(free / params.c, params.c, t, eta)?;
    Ok((-pinned * t).exp() * decayed_bracket(free, &args) / (4.0 * params.c))
}

/// `E[exp(i alpha eta) ; on the closed side]`, vertices included.
pub fn boundary_cf(params: &ModelParams, alpha: f64, t: f64, side: Side) -> Complex64 {
    let (pinned, free) = side.rates(params);
    let ac = alpha * params.c;
    let root = principal_sqrt(free * free - ac * ac);
    0.25 * (-pinned * t).exp() * two_exponential_bracket(free, root, t)
}
