//! Law of `T(t)`, the time spent moving vertically up to `t`.
//!
//! `T(t)` has atoms `e^{-lambda t}/2` at `0` and at `t` (no switch before
//! `t`, starting horizontal or vertical) and a density on `(0, t)`. Two
//! forms of that density are provided, see [`OccupationVariant`].

use super::{principal_sqrt, two_exponential_bracket, LawValue};
use crate::bessel::{i0e_raw, i1_over_x_e_raw};
use crate::error::{domain, invalid, Result};
use crate::quadrature::kronrod_fixed;
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Which expression is used for the continuous part of the law.
///
/// With `z = 2 lambda sqrt(s (t - s))` both read
/// `e^{-lambda t} [lambda I0(z) + lambda m I1(z) / sqrt(s (t - s))]`:
///
/// * `Paper`: `m = s`, the time derivative of `I0(z)` taken literally;
/// * `Symmetrized`: `m = t / 2`, invariant under `s -> t - s`.
///
/// The two coincide at `s = t / 2` and have the same total mass. Only the
/// symmetrized form agrees with the occupation time of the motion started
/// from a uniform direction; the other one is the law conditional on a
/// vertical start. See `verify::oracle` for the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OccupationVariant {
    Paper,
    Symmetrized,
}

impl OccupationVariant {
    pub const ALL: [OccupationVariant; 2] = [OccupationVariant::Paper, OccupationVariant::Symmetrized];

    pub fn name(self) -> &'static str {
        match self {
            OccupationVariant::Paper => "paper",
            OccupationVariant::Symmetrized => "symmetrized",
        }
    }
}

impl fmt::Display for OccupationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OccupationVariant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(OccupationVariant::Paper),
            "symmetrized" => Ok(OccupationVariant::Symmetrized),
            other => Err(invalid(format!(
                "unknown occupation variant {other:?}, expected paper or symmetrized"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OccupationLaw {
    pub lambda: f64,
    pub t: f64,
    pub variant: OccupationVariant,
    pub atom_at_zero: f64,
    pub atom_at_t: f64,
}

pub fn occupation_law(lambda: f64, t: f64, variant: OccupationVariant) -> Result<OccupationLaw> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid(format!("lambda must be positive, got {lambda}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    let atom = 0.5 * (-lambda * t).exp();
    Ok(OccupationLaw {
        lambda,
        t,
        variant,
        atom_at_zero: atom,
        atom_at_t: atom,
    })
}

impl OccupationLaw {
    /// Density of the continuous part at `s` in `(0, t)`.
    pub fn density(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < self.t) {
            return Err(domain(format!(
                "occupation density is defined on (0, {}), got {s}",
                self.t
            )));
        }
        Ok(self.density_closed(s))
    }

    /// Same as [`density`](Self::density) but extended by continuity to
    /// `[0, t]`.
    pub(crate) fn density_closed(&self, s: f64) -> f64 {
        let OccupationLaw { lambda, t, .. } = *self;
        let m = match self.variant {
            OccupationVariant::Paper => s,
            OccupationVariant::Symmetrized => 0.5 * t,
        };
        let z = 2.0 * lambda * (s * (t - s)).max(0.0).sqrt();
        (z - lambda * t).exp() * (lambda * i0e_raw(z) + 2.0 * lambda * lambda * m * i1_over_x_e_raw(z))
    }

    /// `1 - e^{-lambda t}`.
    pub fn continuous_mass(&self) -> f64 {
        -(-self.lambda * self.t).exp_m1()
    }

    pub fn law_at(&self, s: f64) -> LawValue {
        if s == 0.0 {
            LawValue::Atom(self.atom_at_zero)
        } else if s == self.t {
            LawValue::Atom(self.atom_at_t)
        } else if s > 0.0 && s < self.t {
            LawValue::Density(self.density_closed(s))
        } else {
            LawValue::OutsideSupport
        }
    }

    /// Tabulated distribution function on `cells` equal cells.
    pub fn cdf(&self, cells: usize) -> Result<OccupationCdf> {
        if cells == 0 {
            return Err(invalid("cdf table needs at least one cell"));
        }
        let h = self.t / cells as f64;
        let mut cumulative = Vec::with_capacity(cells + 1);
        let mut density = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        density.push(self.density_closed(0.0));
        for k in 0..cells {
            let a = k as f64 * h;
            let b = if k + 1 == cells { self.t } else { a + h };
            acc += kronrod_fixed(|s| self.density_closed(s), a, b);
            cumulative.push(acc);
            density.push(self.density_closed(b));
        }
        Ok(OccupationCdf {
            law: *self,
            step: h,
            cumulative,
            density,
        })
    }
}

/// Mixed distribution function of [`OccupationLaw`], atoms included.
///
/// Between nodes the continuous part is a cubic Hermite interpolant of the
/// integrated density, so its derivative matches the density at every node.
#[derive(Debug, Clone)]
pub struct OccupationCdf {
    law: OccupationLaw,
    step: f64,
    cumulative: Vec<f64>,
    density: Vec<f64>,
}

impl OccupationCdf {
    /// Integral of the continuous part over `[0, s]`, `s` in `[0, t]`.
    fn continuous(&self, s: f64) -> f64 {
        let cells = self.cumulative.len() - 1;
        let k = ((s / self.step) as usize).min(cells - 1);
        let a = k as f64 * self.step;
        let h = if k + 1 == cells { self.law.t - a } else { self.step };
        let u = ((s - a) / h).clamp(0.0, 1.0);
        let (f0, f1) = (self.cumulative[k], self.cumulative[k + 1]);
        let (d0, d1) = (self.density[k] * h, self.density[k + 1] * h);
        let u2 = u * u;
        let u3 = u2 * u;
        f0 * (2.0 * u3 - 3.0 * u2 + 1.0)
            + d0 * (u3 - 2.0 * u2 + u)
            + f1 * (3.0 * u2 - 2.0 * u3)
            + d1 * (u3 - u2)
    }

    /// `P(T <= s)`.
    pub fn at(&self, s: f64) -> f64 {
        let law = &self.law;
        if s < 0.0 {
            0.0
        } else if s >= law.t {
            1.0
        } else {
            law.atom_at_zero + self.continuous(s)
        }
    }

    /// `P(T < s)`.
    pub fn left_limit(&self, s: f64) -> f64 {
        let law = &self.law;
        if s <= 0.0 {
            0.0
        } else if s > law.t {
            1.0
        } else if s == law.t {
            1.0 - law.atom_at_t
        } else {
            law.atom_at_zero + self.continuous(s)
        }
    }

    pub fn law(&self) -> &OccupationLaw {
        &self.law
    }
}

/// `E exp(i alpha T(t))`:
///
/// `e^{i alpha t/2 - lambda t}/2 [(1 + 2 lambda/R) e^{Rt/2} + (1 - 2 lambda/R) e^{-Rt/2}]`,
/// `R = sqrt(4 lambda^2 - alpha^2)`.
pub fn occupation_cf(lambda: f64, alpha: f64, t: f64) -> Complex64 {
    let half_root = 0.5 * principal_sqrt(4.0 * lambda * lambda - alpha * alpha);
    let centre = Complex64::from_polar(0.5, 0.5 * alpha * t);
    centre * two_exponential_bracket(lambda, half_root, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_i0, bessel_i1};
    use crate::quadrature::Quadrature;

    fn both(lambda: f64, t: f64) -> [OccupationLaw; 2] {
        OccupationVariant::ALL.map(|v| occupation_law(lambda, t, v).unwrap())
    }

    #[test]
    fn atoms() {
        for law in both(1.0, 1.0) {
            assert!((law.atom_at_zero - 0.183_939_720_585_721_2).abs() < 1e-15);
            assert_eq!(law.atom_at_t, law.atom_at_zero);
            assert_eq!(law.law_at(0.0), LawValue::Atom(law.atom_at_zero));
            assert_eq!(law.law_at(1.0), LawValue::Atom(law.atom_at_t));
            assert_eq!(law.law_at(1.5), LawValue::OutsideSupport);
            assert!(law.density(0.0).is_err());
            assert!(law.density(1.0).is_err());
        }
        assert!(occupation_law(0.0, 1.0, OccupationVariant::Paper).is_err());
        assert!("sym".parse::<OccupationVariant>().is_err());
        assert_eq!("paper".parse::<OccupationVariant>().unwrap(), OccupationVariant::Paper);
    }

    #[test]
    fn variants_agree_at_midpoint() {
        let expected = (-1.0f64).exp() * (bessel_i0(1.0).unwrap() + bessel_i1(1.0).unwrap());
        assert!((expected - 0.673_670_022_943_349).abs() < 1e-14);
        for law in both(1.0, 1.0) {
            assert!((law.density(0.5).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn both_variants_carry_the_continuous_mass() {
        let q = Quadrature::default();
        for &(lambda, t) in &[(1.0, 1.0), (3.0, 0.4), (0.2, 5.0), (50.0, 1.0)] {
            for law in both(lambda, t) {
                let mass = q.try_integrate(|s| law.density(s), 0.0, t).unwrap().value;
                assert!((mass - law.continuous_mass()).abs() < 1e-8, "{law:?}");
            }
        }
    }

    #[test]
    fn only_the_symmetrized_variant_is_symmetric() {
        let [paper, sym] = both(2.0, 1.5);
        for &s in &[0.1, 0.4, 0.7] {
            let a = sym.density(s).unwrap();
            let b = sym.density(1.5 - s).unwrap();
            assert!(((a - b) / a).abs() < 1e-14);
            assert!(paper.density(s).unwrap() < paper.density(1.5 - s).unwrap());
        }
    }

    #[test]
    fn integral_identity_over_s_t_minus_s() {
        // int_0^t I0(K sqrt(s (t - s))) ds = (e^{Kt/2} - e^{-Kt/2}) / K
        let q = Quadrature::default();
        for &k in &[0.5, 1.0, 3.0] {
            for &t in &[0.5, 1.0, 2.0] {
                let lhs = q
                    .try_integrate(|s| bessel_i0(k * (s * (t - s)).max(0.0).sqrt()), 0.0, t)
                    .unwrap()
                    .value;
                let rhs = 2.0 * (0.5 * k * t).sinh() / k;
                assert!((lhs - rhs).abs() < 1e-8 * rhs);
            }
        }
    }

    #[test]
    fn cdf_table() {
        for law in both(1.3, 0.9) {
            let cdf = law.cdf(512).unwrap();
            assert_eq!(cdf.at(-0.1), 0.0);
            assert_eq!(cdf.left_limit(0.0), 0.0);
            assert_eq!(cdf.at(0.0), law.atom_at_zero);
            assert!((cdf.left_limit(0.9) - (1.0 - law.atom_at_t)).abs() < 1e-12);
            assert!((cdf.at(0.9 - 1e-12) - (1.0 - law.atom_at_t)).abs() < 1e-10);
            assert_eq!(cdf.at(0.9), 1.0);
            let q = Quadrature::default();
            let mut prev = 0.0;
            for k in 0..=200 {
                let s = 0.9 * k as f64 / 200.0 * 0.999_999;
                let v = cdf.at(s);
                assert!(v >= prev);
                prev = v;
                if s > 0.0 {
                    let exact = law.atom_at_zero + q.try_integrate(|x| law.density(x), 0.0, s).unwrap().value;
                    assert!((v - exact).abs() < 1e-10, "s = {s}: {v} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn cf_special_values() {
        assert!((occupation_cf(1.0, 0.0, 1.0) - 1.0).norm() < 1e-15);
        // |alpha| = 2 lambda: removable singularity, limit e^{i alpha t/2} e^{-lambda t} (1 + lambda t)
        let v = occupation_cf(1.5, 3.0, 0.8);
        let expected = Complex64::from_polar((-1.2f64).exp() * 2.2, 1.2);
        assert!((v - expected).norm() < 1e-15);
        for &alpha in &[0.1, 1.0, 2.0, 2.5, 10.0, 100.0] {
            let centred = occupation_cf(1.0, alpha, 1.3) * Complex64::from_polar(1.0, -0.65 * alpha);
            assert!(centred.im.abs() <= 1e-12);
        }
        for &alpha in &[0.5, 2.0, 7.0] {
            let v = occupation_cf(1e5, alpha, 1.0);
            assert!((v - Complex64::from_polar(1.0, alpha / 2.0)).norm() < 1e-3);
        }
    }

    fn fourier(law: &OccupationLaw, alpha: f64) -> Complex64 {
        let q = Quadrature::with_tolerance(1e-12, 1e-15);
        let re = q
            .try_integrate(|s| Ok(law.density(s)? * (alpha * s).cos()), 0.0, law.t)
            .unwrap()
            .value;
        let im = q
            .try_integrate(|s| Ok(law.density(s)? * (alpha * s).sin()), 0.0, law.t)
            .unwrap()
            .value;
        Complex64::new(re, im) + law.atom_at_zero + Complex64::from_polar(law.atom_at_t, alpha * law.t)
    }

    #[test]
    fn cf_is_the_transform_of_the_symmetrized_law() {
        let [paper, sym] = both(1.0, 1.0);
        let mut paper_gap: f64 = 0.0;
        for &alpha in &[0.5, 1.0, 2.0, 3.0, 6.0, 15.0] {
            let cf = occupation_cf(1.0, alpha, 1.0);
            assert!((fourier(&sym, alpha) - cf).norm() < 1e-10, "alpha {alpha}");
            paper_gap = paper_gap.max((fourier(&paper, alpha) - cf).norm());
        }
        assert!(paper_gap > 1e-2);
    }
}
