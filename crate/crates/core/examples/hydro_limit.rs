//! Along `lambda = c^2 -> inf` the interior density approaches a correlated
//! Gaussian with correlation `2p - 1`.

use orthomotion::exact::{hydro_density, hydro_params, interior_density};
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let (p, t) = (0.9, 10.0);
    let limit = hydro_params(p, t)?;
    println!("limit covariance {:?}, correlation {}", limit.covariance, limit.correlation);
    let points = [(0.0, 0.0), (1.0, 1.0), (2.0, -1.0), (-3.0, -2.5)];
    for c in [5.0, 10.0, 20.0, 40.0] {
        let params = ModelParams::new(c * c, p, c)?;
        let worst = points
            .iter()
            .map(|&(x, y)| Ok((interior_density(&params, x, y, t)? - hydro_density(p, x, y, t)?).abs()))
            .collect::<orthomotion::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("c = {c:>4}: largest gap {worst:.3e}");
    }
    Ok(())
}
