//! Planar random motion with orthogonal directions.
//!
//! A particle starts at the origin, picks one of the four axis directions
//! uniformly and moves at speed `c`. At the epochs of a Poisson process of
//! rate `lambda` it turns by a quarter: from a horizontal direction it turns
//! counterclockwise with probability `p`, from a vertical one it turns
//! clockwise with probability `p`. Writing `X = U + V`, `Y = U - V`, the
//! coordinates split into two independent telegraph processes `U`, `V` with
//! rates `lambda (1 - p)` and `lambda p` and common speed `c / 2`.
//!
//! The crate is organised as
//!
//! * [`bessel`]: `I0`, `I1`, their exponentially scaled forms and the time
//!   derivative kernel shared by every density;
//! * [`telegraph`]: the one-dimensional building block;
//! * [`motion`]: the planar process, its samplers and path queries;
//! * [`exact`]: closed-form densities, masses and characteristic functions;
//! * [`verify`]: independent oracles, statistical comparators and the
//!   verification suite;
//! * [`cli`]: the command line front end used by the `orthomotion` binary.

pub mod bessel;
pub mod cli;
pub mod error;
pub mod exact;
pub mod motion;
pub mod quadrature;
pub mod rng;
pub mod telegraph;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{LawValue, OccupationVariant};
pub use motion::{Direction, ModelParams, PathSample, PlanarPoint};
pub use telegraph::{Telegraph, TelegraphSample};
