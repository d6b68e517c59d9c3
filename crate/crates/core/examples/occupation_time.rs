//! Time spent moving vertically: the two closed forms, the Poisson-Beta
//! series, the inverted characteristic function, and simulation.
//!
//! Only the symmetric form agrees with the series and the inversion; both
//! forms solve the same equation and carry the same mass.

use orthomotion::exact::{occupation_cf, occupation_law};
use orthomotion::verify::ensemble::simulate_outcomes;
use orthomotion::verify::stats::mean_var;
use orthomotion::verify::{cf_invert_occupation, occupation_density_oracle};
use orthomotion::{ModelParams, OccupationVariant};

fn main() -> orthomotion::Result<()> {
    let (lambda, t) = (1.0, 1.0);
    let paper = occupation_law(lambda, t, OccupationVariant::Paper)?;
    let sym = occupation_law(lambda, t, OccupationVariant::Symmetrized)?;
    let grid = [0.1, 0.25, 0.5, 0.75, 0.9];
    let inverted = cf_invert_occupation(lambda, t, &grid)?;
    println!("atoms at 0 and t: {:.10}", sym.atom_at_zero);
    println!("{:>5} {:>14} {:>14} {:>14} {:>14}", "s", "paper", "symmetrized", "series", "inversion");
    for (s, inv) in grid.iter().zip(&inverted) {
        println!(
            "{s:>5} {:>14.10} {:>14.10} {:>14.10} {:>14.10}",
            paper.density(*s)?,
            sym.density(*s)?,
            occupation_density_oracle(lambda, *s, t, 1e-14)?,
            inv
        );
    }
    println!("continuous mass: paper {:.12}, symmetrized {:.12}", paper.continuous_mass(), sym.continuous_mass());
    println!("cf at alpha = 2: {:.10}", occupation_cf(lambda, 2.0, t));

    let params = ModelParams::new(lambda, 0.5, 1.0)?;
    let samples: Vec<f64> = simulate_outcomes(&params, t, 200_000, 3).iter().map(|o| o.occupation).collect();
    let (mean, var) = mean_var(&samples);
    println!("simulated mean {mean:.5}, variance {var:.5}");
    Ok(())
}
