//! Finite-difference residuals of the closed forms in their equations,
//! with the observed order of the stencils.

use orthomotion::exact::Side;
use orthomotion::verify::pde::default_grid;
use orthomotion::verify::{pde_residual, PdeTarget};
use orthomotion::{ModelParams, OccupationVariant};

fn main() -> orthomotion::Result<()> {
    let params = ModelParams::new(1.0, 0.3, 1.0)?;
    for target in [
        PdeTarget::FourthOrder,
        PdeTarget::Hydro,
        PdeTarget::Boundary(Side::new(0)?),
        PdeTarget::Boundary(Side::new(1)?),
        PdeTarget::Occupation(OccupationVariant::Paper),
        PdeTarget::Occupation(OccupationVariant::Symmetrized),
    ] {
        for r in pde_residual(target, &params, &default_grid(target, &params, 1.0)) {
            println!("{r}");
        }
    }
    Ok(())
}
