//! Modified Bessel functions of the first kind of orders zero and one.
//!
//! Arguments up to [`SERIES_LIMIT`] use the power series, larger arguments
//! the Hankel asymptotic expansion truncated at its smallest term. Every
//! density in the crate carries an `exp(-rate * t)` prefactor, so the
//! evaluators combine it with the exponentially scaled values `exp(-x) I(x)`
//! and never form `I0` or `I1` of a large argument directly.

use crate::error::{domain, Result};
use std::f64::consts::PI;

/// Crossover between the power series and the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 15.0;

fn check_argument(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(format!("Bessel argument must be finite, got {x}")));
    }
    if x < 0.0 {
        return Err(domain(format!("Bessel argument must be nonnegative, got {x}")));
    }
    Ok(())
}

/// `sum_k (x^2/4)^k / (k!)^2`
fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term <= sum * 1e-17 {
            return sum;
        }
        k += 1.0;
    }
}

/// `I1(x) / x = (1/2) sum_k (x^2/4)^k / (k! (k+1)!)`, finite at the origin.
fn i1_over_x_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5;
    let mut sum = 0.5;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + 1.0));
        sum += term;
        if term <= sum * 1e-17 {
            return sum;
        }
        k += 1.0;
    }
}

/// `exp(-x) I_nu(x)` from the Hankel expansion, `mu = 4 nu^2`.
fn asymptotic_scaled(mu: f64, x: f64) -> f64 {
    let mut term: f64 = 1.0;
    let mut sum: f64 = 1.0;
    let mut k = 1.0;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() <= sum.abs() * 1e-17 {
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `exp(-x) I0(x)` without argument checks.
pub(crate) fn i0e_raw(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        (-x).exp() * i0_series(x)
    } else {
        asymptotic_scaled(0.0, x)
    }
}

/// `exp(-x) I1(x) / x` without argument checks; equals `1/2` at the origin.
pub(crate) fn i1_over_x_e_raw(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        (-x).exp() * i1_over_x_series(x)
    } else {
        asymptotic_scaled(4.0, x) / x
    }
}

/// Modified Bessel function `I0(x)`, `x >= 0`.
///
/// Overflows to infinity beyond `x ~ 709`; use [`bessel_i0e`] there.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(if x <= SERIES_LIMIT {
        i0_series(x)
    } else {
        // split the exponential so that exp(x) alone does not overflow first
        let half = (0.5 * x).exp();
        half * asymptotic_scaled(0.0, x) * half
    })
}

/// Modified Bessel function `I1(x)`, `x >= 0`.
pub fn bessel_i1(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(if x <= SERIES_LIMIT {
        x * i1_over_x_series(x)
    } else {
        let half = (0.5 * x).exp();
        half * asymptotic_scaled(4.0, x) * half
    })
}

/// Exponentially scaled `exp(-x) I0(x)`.
pub fn bessel_i0e(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(i0e_raw(x))
}

/// Exponentially scaled `exp(-x) I1(x)`.
pub fn bessel_i1e(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(x * i1_over_x_e_raw(x))
}

/// Arguments of the composite term `I0(a sqrt(c^2 t^2 - w^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelArgs {
    /// Bessel scale.
    pub a: f64,
    /// Speed.
    pub c: f64,
    /// Time.
    pub t: f64,
    /// Spatial offset, `|w| <= c t`.
    pub w: f64,
}

impl KernelArgs {
    pub fn new(a: f64, c: f64, t: f64, w: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(domain(format!("kernel scale must be finite and >= 0, got {a}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(domain(format!("kernel speed must be positive, got {c}")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(domain(format!("kernel time must be positive, got {t}")));
        }
        if !w.is_finite() || w.abs() > c * t {
            return Err(domain(format!("offset {w} outside [-{0}, {0}]", c * t)));
        }
        Ok(Self { a, c, t, w })
    }

    /// `sqrt(c^2 t^2 - w^2)`, formed as a product to keep accuracy near `|w| = c t`.
    pub fn radius(&self) -> f64 {
        let ct = self.c * self.t;
        let w = self.w.abs();
        ((ct - w) * (ct + w)).max(0.0).sqrt()
    }

    /// The Bessel argument `a sqrt(c^2 t^2 - w^2)`.
    pub fn argument(&self) -> f64 {
        self.a * self.radius()
    }
}

/// `d/dt I0(a sqrt(c^2 t^2 - w^2)) = a c^2 t I1(a z) / z`, `z = sqrt(c^2 t^2 - w^2)`.
///
/// At `|w| = c t` the removable singularity takes its limit `a^2 c^2 t / 2`.
pub fn kernel_dt_i0(args: &KernelArgs) -> Result<f64> {
    let args = KernelArgs::new(args.a, args.c, args.t, args.w)?;
    let y = args.argument();
    let i1_over_x = if y <= SERIES_LIMIT {
        i1_over_x_series(y)
    } else {
        bessel_i1(y)? / y
    };
    Ok(args.a * args.a * args.c * args.c * args.t * i1_over_x)
}

/// `exp(-rate t) [rate I0(a z) + d/dt I0(a z)]`, the bracket shared by the
/// telegraph, boundary and occupation densities.
///
/// Evaluated through the scaled functions so that it stays finite for
/// `rate * t` in the thousands.
pub fn decayed_bracket(rate: f64, args: &KernelArgs) -> f64 {
    let y = args.argument();
    let growth = (y - rate * args.t).exp();
    let scaled_kernel = args.a * args.a * args.c * args.c * args.t * i1_over_x_e_raw(y);
    growth * (rate * i0e_raw(y) + scaled_kernel)
}
