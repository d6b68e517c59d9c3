//! Finite-difference residuals of the governing equations applied to the
//! closed forms.
//!
//! Every operator is a constant-coefficient polynomial in partial
//! derivatives. Each monomial is discretized by the tensor product of
//! centred one-dimensional stencils, all second order, and the residual is
//! evaluated at steps `h` and `h/2`. The observed order and the Richardson
//! extrapolated residual, relative to the largest single term, are reported.

use super::report::{Method, VerificationReport};
use crate::error::{domain, Result};
use crate::exact::{
    boundary_density, hydro_density, interior_density, occupation_law, OccupationVariant, Side,
};
use crate::motion::ModelParams;
use serde::Serialize;

/// Centred stencil for the `order`-th derivative as `(offset, weight)`,
/// weights to be divided by `h^order`.
fn stencil(order: usize) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => panic!("no stencil for derivative order {order}"),
    }
}

/// `coef * d^{orders[0]} ... d^{orders[N-1]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<const N: usize> {
    pub coef: f64,
    pub orders: [usize; N],
}

fn term<const N: usize>(coef: f64, orders: [usize; N]) -> Term<N> {
    Term { coef, orders }
}

/// Finite-difference value of every term at `point`.
fn term_values<const N: usize, F>(f: &F, terms: &[Term<N>], point: [f64; N], h: f64) -> Result<Vec<f64>>
where
    F: Fn([f64; N]) -> Result<f64>,
{
    terms
        .iter()
        .map(|tm| {
            // walk the tensor product of the per-axis stencils
            let axes: Vec<&[(i32, f64)]> = tm.orders.iter().map(|&o| stencil(o)).collect();
            let mut idx = [0usize; N];
            let mut acc = 0.0;
            loop {
                let mut x = point;
                let mut w = 1.0;
                for d in 0..N {
                    let (off, wt) = axes[d][idx[d]];
                    x[d] += off as f64 * h;
                    w *= wt;
                }
                acc += w * f(x)?;
                let mut d = 0;
                loop {
                    if d == N {
                        let total: usize = tm.orders.iter().sum();
                        return Ok(tm.coef * acc / h.powi(total as i32));
                    }
                    idx[d] += 1;
                    if idx[d] < axes[d].len() {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
            }
        })
        .collect()
}

/// Residual measurements of one operator on a set of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualStudy {
    pub step: f64,
    /// `max |residual(h/2)| / max |term|`, over the points.
    pub relative_residual: f64,
    /// Same after Richardson extrapolation of the two steps.
    pub extrapolated: f64,
    /// `log2(|r(h)| / |r(h/2)|)` in the 2-norm over the points.
    pub observed_order: f64,
}

fn study<const N: usize, F>(f: F, terms: &[Term<N>], points: &[[f64; N]], h: f64) -> Result<ResidualStudy>
where
    F: Fn([f64; N]) -> Result<f64>,
{
    let (mut n_coarse, mut n_fine) = (0.0, 0.0);
    let (mut rel_fine, mut rel_extra): (f64, f64) = (0.0, 0.0);
    for &pt in points {
        let coarse = term_values(&f, terms, pt, h)?;
        let fine = term_values(&f, terms, pt, 0.5 * h)?;
        let scale = fine.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let r1: f64 = coarse.iter().sum();
        let r2: f64 = fine.iter().sum();
        let extra = r2 + (r2 - r1) / 3.0;
        n_coarse += (r1 / scale).powi(2);
        n_fine += (r2 / scale).powi(2);
        rel_fine = rel_fine.max(r2.abs() / scale);
        rel_extra = rel_extra.max(extra.abs() / scale);
    }
    Ok(ResidualStudy {
        step: h,
        relative_residual: rel_fine,
        extrapolated: rel_extra,
        observed_order: (n_coarse / n_fine).sqrt().log2(),
    })
}

/// The operators that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdeTarget {
    /// Fourth-order equation of the interior density, variables `(t, x, y)`.
    FourthOrder,
    /// Limiting diffusion equation, variables `(t, x, y)`.
    Hydro,
    /// Boundary line density on a side, variables `(t, eta)`.
    Boundary(Side),
    /// Occupation density, variables `(s, t)`.
    Occupation(OccupationVariant),
}

impl PdeTarget {
    pub fn name(&self) -> String {
        match self {
            PdeTarget::FourthOrder => "fourth_order".into(),
            PdeTarget::Hydro => "hydro".into(),
            PdeTarget::Boundary(s) => format!("boundary_side{}", s.index()),
            PdeTarget::Occupation(v) => format!("occupation_{v}"),
        }
    }
}

/// Evaluation points and step for [`pde_residual`].
#[derive(Debug, Clone, PartialEq)]
pub struct PdeGrid {
    pub t: f64,
    /// Spatial points: `(x, y)` for the planar targets, `(eta, _)` for a
    /// boundary side, `(s, _)` for the occupation time.
    pub points: Vec<(f64, f64)>,
    pub step: f64,
}

/// `(d/dt + lambda)^k` expanded, as `(coefficient, power of d/dt)`.
fn shifted_powers(lambda: f64, k: usize) -> Vec<(f64, usize)> {
    let mut binom = 1.0;
    (0..=k)
        .map(|j| {
            let c = binom * lambda.powi((k - j) as i32);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
            (c, j)
        })
        .collect()
}

fn fourth_order_terms(params: &ModelParams) -> Vec<Term<3>> {
    let ModelParams { lambda, p, c } = *params;
    let q = 1.0 - p;
    let c2 = c * c;
    let mut terms = Vec::new();
    for (a, j) in shifted_powers(lambda, 4) {
        terms.push(term(a, [j, 0, 0]));
    }
    for (a, j) in shifted_powers(lambda, 2) {
        terms.push(term(-a * c2, [j, 2, 0]));
        terms.push(term(-a * c2, [j, 0, 2]));
        terms.push(term(-a * 2.0 * lambda * lambda * (p * p + q * q), [j, 0, 0]));
    }
    terms.push(term(c2 * c2, [0, 2, 2]));
    terms.push(term(2.0 * lambda * lambda * c2 * (1.0 - 2.0 * p), [0, 1, 1]));
    terms.push(term(lambda.powi(4) * (1.0 - 2.0 * p).powi(2), [0, 0, 0]));
    terms
}

fn hydro_terms(p: f64) -> Vec<Term<3>> {
    let pq = p * (1.0 - p);
    vec![
        term(1.0, [1, 0, 0]),
        term(-1.0 / (8.0 * pq), [0, 2, 0]),
        term(-1.0 / (8.0 * pq), [0, 0, 2]),
        term(-(2.0 * p - 1.0) / (4.0 * pq), [0, 1, 1]),
    ]
}

/// `d_tt + 2 lambda d_t - c^2 d_eta eta + lambda^2 (1 - r^2)`, `r` the free
/// rate over `lambda`.
fn boundary_terms(params: &ModelParams, side: Side) -> Vec<Term<2>> {
    let ModelParams { lambda, p, c } = *params;
    let r = if side.is_diagonal() { p } else { 1.0 - p };
    vec![
        term(1.0, [2, 0]),
        term(2.0 * lambda, [1, 0]),
        term(-c * c, [0, 2]),
        term(lambda * lambda * (1.0 - r * r), [0, 0]),
    ]
}

/// `d_tt + d_s d_t + 2 lambda d_t + lambda d_s`, variables `(s, t)`.
fn occupation_terms(lambda: f64) -> Vec<Term<2>> {
    vec![
        term(1.0, [0, 2]),
        term(1.0, [1, 1]),
        term(2.0 * lambda, [0, 1]),
        term(lambda, [1, 0]),
    ]
}

/// Applies the named operator to its closed form on `grid`.
///
/// Every stencil must stay inside the open region where the closed form is
/// smooth; otherwise a domain error is returned.
pub fn pde_study(target: PdeTarget, params: &ModelParams, grid: &PdeGrid) -> Result<ResidualStudy> {
    let reach = 2.0 * grid.step;
    let t = grid.t;
    if !(t > reach) {
        return Err(domain("time too small for the stencil"));
    }
    match target {
        PdeTarget::FourthOrder => {
            let pts: Vec<[f64; 3]> = grid.points.iter().map(|&(x, y)| [t, x, y]).collect();
            for &[_, x, y] in &pts {
                let r = x.abs() + y.abs() + 2.0 * reach;
                if r + params.c * reach >= params.c * t {
                    return Err(domain(format!("stencil at ({x}, {y}) reaches the boundary")));
                }
            }
            study(
                |[t, x, y]| interior_density(params, x, y, t),
                &fourth_order_terms(params),
                &pts,
                grid.step,
            )
        }
        PdeTarget::Hydro => {
            let pts: Vec<[f64; 3]> = grid.points.iter().map(|&(x, y)| [t, x, y]).collect();
            study(
                |[t, x, y]| hydro_density(params.p, x, y, t),
                &hydro_terms(params.p),
                &pts,
                grid.step,
            )
        }
        PdeTarget::Boundary(side) => {
            let pts: Vec<[f64; 2]> = grid.points.iter().map(|&(eta, _)| [t, eta]).collect();
            for &[_, eta] in &pts {
                if eta.abs() + reach + params.c * reach >= params.c * t {
                    return Err(domain(format!("stencil at eta = {eta} reaches a vertex")));
                }
            }
            study(
                |[t, eta]| boundary_density(params, eta, t, side),
                &boundary_terms(params, side),
                &pts,
                grid.step,
            )
        }
        PdeTarget::Occupation(variant) => {
            let pts: Vec<[f64; 2]> = grid.points.iter().map(|&(s, _)| [s, t]).collect();
            for &[s, _] in &pts {
                if s - reach <= 0.0 || s + 2.0 * reach >= t {
                    return Err(domain(format!("stencil at s = {s} reaches an endpoint")));
                }
            }
            let lambda = params.lambda;
            study(
                |[s, t]| occupation_law(lambda, t, variant)?.density(s),
                &occupation_terms(lambda),
                &pts,
                grid.step,
            )
        }
    }
}

/// Tolerance on the extrapolated relative residual.
pub fn residual_tolerance(target: PdeTarget) -> f64 {
    match target {
        PdeTarget::Hydro => 1e-6,
        _ => 1e-3,
    }
}

/// Reports for one target: the extrapolated residual and, except for the
/// Gaussian whose residual sits at rounding level, the observed order.
pub fn pde_residual(target: PdeTarget, params: &ModelParams, grid: &PdeGrid) -> Vec<VerificationReport> {
    let name = target.name();
    match pde_study(target, params, grid) {
        Ok(st) => {
            let mut out = vec![VerificationReport::new(
                format!("pde_residual.{name}"),
                st.extrapolated,
                0.0,
                residual_tolerance(target),
                Method::FiniteDifference,
            )];
            if target != PdeTarget::Hydro {
                out.push(VerificationReport::new(
                    format!("pde_order.{name}"),
                    st.observed_order,
                    2.0,
                    ORDER_TOLERANCE,
                    Method::FiniteDifference,
                ));
            }
            out
        }
        Err(_) => vec![VerificationReport::broken(format!("pde_residual.{name}"), Method::FiniteDifference)],
    }
}

/// Accepted deviation of the observed convergence order from 2.
pub const ORDER_TOLERANCE: f64 = 0.1;

/// Default evaluation grids.
pub fn default_grid(target: PdeTarget, params: &ModelParams, t: f64) -> PdeGrid {
    let ct = params.c * t;
    match target {
        PdeTarget::FourthOrder => PdeGrid {
            t,
            points: vec![(0.1 * ct, 0.2 * ct), (-0.3 * ct, 0.1 * ct), (0.2 * ct, -0.25 * ct), (0.0, 0.0)],
            step: 0.02 * t,
        },
        PdeTarget::Hydro => PdeGrid {
            t,
            points: vec![(0.3, -0.2), (0.5, 0.5), (-1.0, 0.4), (0.0, 0.0)],
            step: 1e-3,
        },
        PdeTarget::Boundary(_) => PdeGrid {
            t,
            points: vec![(0.0, 0.0), (0.3 * ct, 0.0), (-0.5 * ct, 0.0)],
            step: 0.01 * t,
        },
        PdeTarget::Occupation(_) => PdeGrid {
            t,
            points: vec![(0.3 * t, 0.0), (0.5 * t, 0.0), (0.7 * t, 0.0)],
            step: 0.01 * t,
        },
    }
}
