//! Independent oracles, statistical comparators and the verification suite.
//!
//! Every closed form of [`crate::exact`] is confirmed by a route that does
//! not share its derivation: Monte Carlo ensembles, the Poisson-Beta series
//! for the occupation time, quadrature of masses and Fourier transforms,
//! characteristic-function inversion and finite-difference residuals.

pub mod audit;
pub mod ensemble;
pub mod oracle;
pub mod pde;
pub mod report;
pub mod stats;
pub mod suite;

pub use audit::{hydro_sweep, mass_budget, normalization_audit, occupation_sweep, HydroSweepConfig};
pub use ensemble::{run_ensemble, EnsembleSummary};
pub use oracle::{cf_invert_occupation, occupation_density_oracle};
pub use pde::{pde_residual, PdeGrid, PdeTarget};
pub use report::{Method, VerificationReport};
pub use stats::{empirical_cf, ks_distance, Cdf};
pub use suite::{run_suite, Adjudication, SuiteConfig, SuiteOutcome};
