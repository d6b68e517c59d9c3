//! Closed-form laws of the planar motion.
//!
//! * [`interior`]: density on the open square and the joint characteristic
//!   function;
//! * [`boundary`]: masses, line densities and characteristic functions on
//!   the sides and vertices;
//! * [`occupation`]: the law of the time spent moving vertically;
//! * [`hydro`]: the correlated Gaussian reached when `lambda, c -> inf`
//!   with `lambda / c^2 -> 1`.

pub mod boundary;
pub mod hydro;
pub mod interior;
pub mod occupation;

pub use boundary::{
    boundary_cf, boundary_density, boundary_mass_total, boundary_side_mass, open_side_mass,
    vertex_mass, Side,
};
pub use hydro::{hydro_density, hydro_params, GaussianLimit};
pub use interior::{ab_pair, interior_density, interior_density_rotated, joint_cf, AbPair};
pub use occupation::{occupation_cf, occupation_law, OccupationLaw, OccupationVariant};

use num_complex::Complex64;
use serde::Serialize;

/// Value of a mixed law at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LawValue {
    /// Density of the absolutely continuous part.
    Density(f64),
    /// Probability mass carried by the point.
    Atom(f64),
    OutsideSupport,
}

impl LawValue {
    pub fn density(&self) -> Option<f64> {
        match *self {
            LawValue::Density(v) => Some(v),
            _ => None,
        }
    }
}

/// Below this `|root| t` the two-exponential brackets switch to series.
pub(crate) const BRACKET_SERIES_THRESHOLD: f64 = 1e-2;

/// `sqrt(x)` on the principal branch: nonnegative real or `+i sqrt(-x)`.
pub(crate) fn principal_sqrt(x: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-x).sqrt())
    }
}

/// `(1 + r/w) exp((w - r) t) + (1 - r/w) exp(-(w + r) t)`, with `r = rate`,
/// `w = root`.
///
/// This is `exp(-r t)` times the two-exponential bracket shared by every
/// characteristic function here. Near `w = 0` the equivalent
/// `2 exp(-r t) [cosh(wt) + r t sinh(wt)/(wt)]` is summed as a series.
pub(crate) fn two_exponential_bracket(rate: f64, root: Complex64, t: f64) -> Complex64 {
    let z = root * t;
    if z.norm() < BRACKET_SERIES_THRESHOLD {
        let z2 = z * z;
        let cosh = 1.0 + z2 * (0.5 + z2 * (1.0 / 24.0 + z2 * (1.0 / 720.0 + z2 / 40_320.0)));
        let sinhc = 1.0 + z2 * (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (1.0 / 5040.0 + z2 / 362_880.0)));
        (cosh + rate * t * sinhc) * (2.0 * (-rate * t).exp())
    } else {
        let ratio = rate / root;
        (1.0 + ratio) * (z - rate * t).exp() + (1.0 - ratio) * (-z - rate * t).exp()
    }
}
