use super::{principal_sqrt, two_exponential_bracket};
use crate::bessel::{decayed_bracket, KernelArgs};
use crate::error::{domain, Result};
use crate::motion::ModelParams;
use num_complex::Complex64;

/// The roots `A(alpha, beta)`, `B(alpha, beta)` of the joint characteristic
/// function, principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbPair {
    /// `sqrt(4 lambda^2 p^2 - c^2 (alpha - beta)^2) / 2`
    pub a: Complex64,
    /// `sqrt(4 lambda^2 (1 - p)^2 - c^2 (alpha + beta)^2) / 2`
    pub b: Complex64,
}

pub fn ab_pair(params: &ModelParams, alpha: f64, beta: f64) -> AbPair {
    let ModelParams { lambda, p, c } = *params;
    let lp = lambda * p;
    let lq = lambda * (1.0 - p);
    let diff = c * (alpha - beta);
    let sum = c * (alpha + beta);
    AbPair {
        a: 0.5 * principal_sqrt(4.0 * lp * lp - diff * diff),
        b: 0.5 * principal_sqrt(4.0 * lq * lq - sum * sum),
    }
}

/// Joint characteristic function `E exp(i alpha X(t) + i beta Y(t))`:
///
/// `exp(-lambda t)/4 {(1 + lambda p/A) e^{At} + (1 - lambda p/A) e^{-At}}
///  {(1 + lambda (1-p)/B) e^{Bt} + (1 - lambda (1-p)/B) e^{-Bt}}`.
pub fn joint_cf(params: &ModelParams, alpha: f64, beta: f64, t: f64) -> Complex64 {
    let AbPair { a, b } = ab_pair(params, alpha, beta);
    let lp = params.lambda * params.p;
    let lq = params.lambda * (1.0 - params.p);
    0.25 * two_exponential_bracket(lp, a, t) * two_exponential_bracket(lq, b, t)
}

/// Density of `(X(t), Y(t))` on the open square `|x| + |y| < c t`.
pub fn interior_density(params: &ModelParams, x: f64, y: f64, t: f64) -> Result<f64> {
    interior_density_rotated(params, x + y, x - y, t)
}

/// The interior density as a function of `xi = x + y`, `eta = x - y`.
///
/// Integrating over `(xi, eta)` needs the Jacobian `1/2`.
pub fn interior_density_rotated(params: &ModelParams, xi: f64, eta: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("time must be positive, got {t}")));
    }
    let ct = params.c * t;
    if !(xi.abs() < ct && eta.abs() < ct) {
        return Err(domain(format!(
            "point (x + y, x - y) = ({xi}, {eta}) is not in the open square of half-diagonal {ct}"
        )));
    }
    let c = params.c;
    let lq = params.lambda * (1.0 - params.p);
    let lp = params.lambda * params.p;
    let along_diagonal = decayed_bracket(lq, &KernelArgs::new(lq / c, c, t, xi)?);
    let along_antidiagonal = decayed_bracket(lp, &KernelArgs::new(lp / c, c, t, eta)?);
    Ok(along_diagonal * along_antidiagonal / (2.0 * c * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_i0, bessel_i1};
    use crate::exact::boundary_mass_total;
    use crate::quadrature::Quadrature;

    fn params(lambda: f64, p: f64, c: f64) -> ModelParams {
        ModelParams::new(lambda, p, c).unwrap()
    }

    #[test]
    fn value_at_origin() {
        let (lambda, p, c, t): (f64, f64, f64, f64) = (1.4, 0.3, 0.9, 1.2);
        let lq = lambda * (1.0 - p);
        let lp = lambda * p;
        let expected = (-lambda * t).exp() / (2.0 * c * c)
            * lq
            * (bessel_i0(lq * t).unwrap() + bessel_i1(lq * t).unwrap())
            * lp
            * (bessel_i0(lp * t).unwrap() + bessel_i1(lp * t).unwrap());
        let got = interior_density(&params(lambda, p, c), 0.0, 0.0, t).unwrap();
        assert!(((got - expected) / expected).abs() < 1e-13);
    }

    #[test]
    fn outside_open_square_is_rejected() {
        let pr = params(1.0, 0.5, 1.0);
        assert!(interior_density(&pr, 0.5, 0.5, 1.0).is_err());
        assert!(interior_density(&pr, 0.9, -0.2, 1.0).is_err());
        assert!(interior_density(&pr, 0.1, 0.1, 0.0).is_err());
    }

    #[test]
    fn integrates_to_complement_of_boundary_mass() {
        let pr = params(1.0, 0.5, 1.0);
        let t = 1.0;
        let ct = pr.c * t;
        let q = Quadrature::with_tolerance(1e-9, 1e-13);
        let total = q
            .try_integrate(
                |xi| {
                    q.try_integrate(|eta| interior_density_rotated(&pr, xi, eta, t), -ct, ct)
                        .map(|r| 0.5 * r.value)
                },
                -ct,
                ct,
            )
            .unwrap()
            .value;
        let expected = 1.0 - boundary_mass_total(&pr, t);
        assert!((total - expected).abs() < 1e-6, "{total} vs {expected}");
    }

    #[test]
    fn cf_at_origin_and_on_the_diagonal() {
        let pr = params(1.7, 0.35, 1.2);
        assert!((joint_cf(&pr, 0.0, 0.0, 0.9) - 1.0).norm() < 1e-15);
        for &alpha in &[0.3, -1.1, 2.5, 7.0] {
            let ab = ab_pair(&pr, alpha, alpha);
            assert_eq!(ab.a, Complex64::new(pr.lambda * pr.p, 0.0));
            let t = 0.9;
            let lhs = joint_cf(&pr, alpha, alpha, t);
            let rhs = pr.diagonal_component().cf(2.0 * alpha, t);
            assert!((lhs - rhs).norm() < 1e-13 * rhs.norm().max(1e-3));
        }
    }

    #[test]
    fn cf_factorizes_at_reference_point() {
        let pr = params(1.0, 0.3, 1.0);
        let (alpha, beta, t) = (1.0, -0.5, 1.0);
        let lhs = joint_cf(&pr, alpha, beta, t);
        let rhs = pr.diagonal_component().cf(alpha + beta, t) * pr.antidiagonal_component().cf(alpha - beta, t);
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn ab_branch_invariant() {
        let pr = params(2.0, 0.6, 1.5);
        for &(al, be) in &[(0.0, 0.0), (3.0, -1.0), (10.0, 4.0), (-7.0, 7.0)] {
            let ab = ab_pair(&pr, al, be);
            for z in [ab.a, ab.b] {
                assert!((z.im == 0.0 && z.re >= 0.0) || (z.re == 0.0 && z.im > 0.0));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn factorization_identity(
                lambda in 0.1f64..5.0, p in 0.05f64..0.95, c in 0.2f64..3.0, t in 0.1f64..3.0,
                u in -0.999f64..0.999, v in -0.999f64..0.999,
            ) {
                let pr = params(lambda, p, c);
                let ct = c * t;
                let (xi, eta) = (u * ct, v * ct);
                let f = interior_density_rotated(&pr, xi, eta, t).unwrap();
                let fu = pr.diagonal_component().density(xi / 2.0, t).unwrap();
                let fv = pr.antidiagonal_component().density(eta / 2.0, t).unwrap();
                let product = 0.5 * fu * fv;
                prop_assert!(((f - product) / product).abs() < 1e-12);
            }

            #[test]
            fn point_symmetry(
                lambda in 0.1f64..5.0, p in 0.05f64..0.95, u in -0.99f64..0.99, v in -0.99f64..0.99,
            ) {
                let pr = params(lambda, p, 1.0);
                let (x, y) = ((u + v) / 2.0, (u - v) / 2.0);
                let a = interior_density(&pr, x, y, 1.0).unwrap();
                let b = interior_density(&pr, -x, -y, 1.0).unwrap();
                prop_assert!(((a - b) / a).abs() < 1e-14);
            }
        }
    }
}
