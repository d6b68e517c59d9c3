//! The one-dimensional telegraph process.
//!
//! A particle moves at speed `v` and reverses its velocity at the epochs of a
//! Poisson process with rate `mu`; the initial velocity is `+v` or `-v` with
//! equal probability. At time `t` the law of the position has an atom of
//! mass `exp(-mu t) / 2` at each of `+v t` and `-v t` and a Bessel-type
//! density in between.

use crate::bessel::{decayed_bracket, KernelArgs};
use crate::error::{domain, invalid, Result};
use crate::exact::LawValue;
use crate::rng::{exponential, uniform};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution, Poisson};

/// Below this value of `|B| t` the characteristic function uses Taylor
/// polynomials for `cosh(Bt)` and `sinh(Bt)/B`.
const TAYLOR_THRESHOLD: f64 = 1e-4;

/// Switching rate and speed of a telegraph process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Telegraph {
    /// Reversal intensity `mu` (1/time). Zero is accepted as a ballistic limit.
    pub rate: f64,
    /// Speed `v` (length/time).
    pub speed: f64,
}

/// One realisation of the telegraph position at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TelegraphSample {
    pub position: f64,
    /// `+1` or `-1`.
    pub final_velocity_sign: i8,
    pub switch_count: u64,
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("time must be positive and finite, got {t}")))
    }
}

impl Telegraph {
    pub fn new(rate: f64, speed: f64) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(invalid(format!("telegraph rate must be >= 0, got {rate}")));
        }
        if !(speed > 0.0 && speed.is_finite()) {
            return Err(invalid(format!("telegraph speed must be > 0, got {speed}")));
        }
        Ok(Self { rate, speed })
    }

    /// Density of the absolutely continuous part on `|x| < v t`.
    pub fn density(&self, x: f64, t: f64) -> Result<f64> {
        check_time(t)?;
        let edge = self.speed * t;
        if !(x.abs() < edge) {
            return Err(domain(format!(
                "telegraph density is defined on |x| < {edge}, got x = {x}"
            )));
        }
        let args = KernelArgs::new(self.rate / self.speed, self.speed, t, x)?;
        Ok(decayed_bracket(self.rate, &args) / (2.0 * self.speed))
    }

    /// Mass of each atom at `+v t` and `-v t`.
    pub fn atom(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(0.5 * (-self.rate * t).exp())
    }

    /// The law at `x`: density inside, atoms at the endpoints.
    pub fn law_at(&self, x: f64, t: f64) -> Result<LawValue> {
        check_time(t)?;
        let edge = self.speed * t;
        Ok(if x.abs() < edge {
            LawValue::Density(self.density(x, t)?)
        } else if x.abs() == edge {
            LawValue::Atom(self.atom(t)?)
        } else {
            LawValue::OutsideSupport
        })
    }

    /// `E exp(i gamma X(t)) = exp(-mu t) [cosh(Bt) + mu sinh(Bt) / B]`,
    /// `B^2 = mu^2 - v^2 gamma^2`.
    ///
    /// `B^2` is real, so the value is real: for `B^2 >= 0` the hyperbolic
    /// branch is used (with `expm1` for the sine term), otherwise the
    /// trigonometric one.
    pub fn cf(&self, gamma: f64, t: f64) -> Complex64 {
        let mu = self.rate;
        let b2 = mu * mu - self.speed * self.speed * gamma * gamma;
        let decay = (-mu * t).exp();
        let (even, odd) = if b2 >= 0.0 {
            let b = b2.sqrt();
            let bt = b * t;
            if bt < TAYLOR_THRESHOLD {
                let s = bt * bt;
                (
                    decay * (1.0 + s / 2.0 + s * s / 24.0),
                    decay * t * (1.0 + s / 6.0 + s * s / 120.0),
                )
            } else {
                let grow = ((b - mu) * t).exp();
                (
                    0.5 * (grow + (-(b + mu) * t).exp()),
                    grow * -(-2.0 * bt).exp_m1() / (2.0 * b),
                )
            }
        } else {
            let b = (-b2).sqrt();
            let bt = b * t;
            if bt < TAYLOR_THRESHOLD {
                let s = bt * bt;
                (
                    decay * (1.0 - s / 2.0 + s * s / 24.0),
                    decay * t * (1.0 - s / 6.0 + s * s / 120.0),
                )
            } else {
                (decay * bt.cos(), decay * bt.sin() / b)
            }
        };
        Complex64::new(even + mu * odd, 0.0)
    }

    /// `Var X(t) = (v^2 / (2 mu^2)) (2 mu t - 1 + exp(-2 mu t))`.
    pub fn variance(&self, t: f64) -> f64 {
        let v2 = self.speed * self.speed;
        let x = 2.0 * self.rate * t;
        if x < 1e-3 {
            // x + expm1(-x) = x^2/2 - x^3/6 + x^4/24 - ...
            v2 * t * t * (1.0 - x / 3.0 + x * x / 12.0 - x * x * x / 60.0)
        } else {
            v2 / (2.0 * self.rate * self.rate) * (x + (-x).exp_m1())
        }
    }

    /// Event-driven exact sampler: a fair sign, then exponential waiting
    /// times until the horizon, flipping the velocity at each epoch.
    pub fn sample<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> TelegraphSample {
        let mut sign: i8 = if uniform(rng) < 0.5 { 1 } else { -1 };
        let mut clock = 0.0;
        let mut position = 0.0;
        let mut switches = 0u64;
        loop {
            let wait = exponential(rng, self.rate);
            if clock + wait >= t {
                position += f64::from(sign) * self.speed * (t - clock);
                break;
            }
            position += f64::from(sign) * self.speed * wait;
            clock += wait;
            sign = -sign;
            switches += 1;
        }
        TelegraphSample {
            position,
            final_velocity_sign: sign,
            switch_count: switches,
        }
    }

    /// Exact sampler with O(1) cost per draw.
    ///
    /// Given `n` reversals the `n + 1` run lengths are uniform spacings of
    /// `[0, t]`, so the time spent with the initial velocity is `t` times a
    /// `Beta(k, n + 1 - k)` variable, `k = ceil((n + 1) / 2)`.
    pub fn sample_by_spacings<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> TelegraphSample {
        let sign: i8 = if uniform(rng) < 0.5 { 1 } else { -1 };
        let mean = self.rate * t;
        let n = if mean > 0.0 {
            Poisson::new(mean)
                .expect("positive Poisson mean")
                .sample(rng) as u64
        } else {
            0
        };
        let v = f64::from(sign) * self.speed;
        let position = if n == 0 {
            v * t
        } else {
            let k = (n + 2) / 2;
            let with_initial = t * Beta::new(k as f64, (n + 1 - k) as f64)
                .expect("shape parameters are >= 1")
                .sample(rng);
            v * (2.0 * with_initial - t)
        };
        TelegraphSample {
            position,
            final_velocity_sign: if n % 2 == 0 { sign } else { -sign },
            switch_count: n,
        }
    }
}
