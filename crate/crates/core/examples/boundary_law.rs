//! Masses, line densities and characteristic functions on the four sides
//! and the vertices, with simulated frequencies for comparison.

use orthomotion::exact::{
    boundary_cf, boundary_density, boundary_side_mass, open_side_mass, vertex_mass, Side,
};
use orthomotion::motion::BoundaryClass;
use orthomotion::verify::ensemble::simulate_outcomes;
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let params = ModelParams::new(1.0, 0.3, 1.0)?;
    let t = 1.0;
    let n = 400_000;
    let outcomes = simulate_outcomes(&params, t, n, 5);
    let count = |pred: &dyn Fn(BoundaryClass) -> bool| outcomes.iter().filter(|o| pred(o.class)).count() as f64 / n as f64;

    for side in Side::ALL {
        let k = side.index();
        let next = (k + 1) % 4;
        let closed = count(&|c| c == BoundaryClass::Side(k) || c == BoundaryClass::Vertex(k) || c == BoundaryClass::Vertex(next));
        println!(
            "side {k}: mass {:.6} (simulated {closed:.6}), open part {:.6}, g(0) = {:.6}, cf(1) = {:.6}",
            boundary_side_mass(&params, t, side),
            open_side_mass(&params, t, side),
            boundary_density(&params, 0.0, t, side)?,
            boundary_cf(&params, 1.0, t, side),
        );
    }
    println!(
        "each vertex: {:.6} (simulated vertex 0: {:.6})",
        vertex_mass(&params, t),
        count(&|c| c == BoundaryClass::Vertex(0))
    );
    Ok(())
}
