//! `X = U + V`, `Y = U - V` with independent telegraph processes: the
//! direct sampler, the decomposed sampler and the closed-form joint
//! characteristic function side by side.

use orthomotion::exact::joint_cf;
use orthomotion::motion::{sample_planar_decomposed, sample_planar_direct};
use orthomotion::verify::ensemble::ordered_draws;
use orthomotion::verify::empirical_cf;
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let params = ModelParams::new(1.0, 0.3, 1.0)?;
    let t = 1.0;
    let n = 200_000;
    let direct = ordered_draws(n, 1, |rng| {
        let p = sample_planar_direct(&params, t, rng);
        (p.x, p.y)
    });
    let decomposed = ordered_draws(n, 2, |rng| {
        let p = sample_planar_decomposed(&params, t, rng);
        (p.x, p.y)
    });
    println!("U: {:?}", params.diagonal_component());
    println!("V: {:?}", params.antidiagonal_component());
    println!("{:>6} {:>6}  {:>22}  {:>22}  {:>22}", "alpha", "beta", "direct", "decomposed", "closed form");
    for &(alpha, beta) in &[(1.0, -0.5), (3.0, 1.0), (-1.0, -3.0), (2.0, 2.0)] {
        let a = empirical_cf(&direct, alpha, beta)?.value;
        let b = empirical_cf(&decomposed, alpha, beta)?.value;
        let z = joint_cf(&params, alpha, beta, t);
        println!("{alpha:>6} {beta:>6}  {a:>22.5}  {b:>22.5}  {z:>22.5}");
    }
    Ok(())
}
