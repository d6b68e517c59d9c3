//! The density on the open square, its factorization into two telegraph
//! densities, and how much mass sits inside.

use orthomotion::exact::{boundary_mass_total, interior_density};
use orthomotion::verify::mass_budget;
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let params = ModelParams::new(1.0, 0.3, 1.0)?;
    let t = 1.0;
    let (u, v) = (params.diagonal_component(), params.antidiagonal_component());
    for &(x, y) in &[(0.0, 0.0), (0.3, 0.1), (-0.2, 0.5), (0.45, 0.45)] {
        let f = interior_density(&params, x, y, t)?;
        let product = 0.5 * u.density((x + y) / 2.0, t)? * v.density((x - y) / 2.0, t)?;
        println!("f({x:+.2}, {y:+.2}) = {f:.12}   half product of telegraph densities {product:.12}");
    }
    let budget = mass_budget(&params, t)?;
    println!("interior mass {:.12}", budget.interior);
    println!("1 - boundary mass {:.12}", 1.0 - boundary_mass_total(&params, t));
    Ok(())
}
