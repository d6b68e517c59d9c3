//! `I0`, `I1`, their scaled forms and the time-derivative kernel.

use orthomotion::bessel::{bessel_i0, bessel_i0e, bessel_i1, bessel_i1e, kernel_dt_i0, KernelArgs};

fn main() -> orthomotion::Result<()> {
    for x in [0.0, 1.0, 10.0, 100.0] {
        println!("x = {x:>6}: I0 {:.15e}  I1 {:.15e}", bessel_i0(x)?, bessel_i1(x)?);
    }
    // unscaled values overflow long before this
    println!("x = 1e4: e^-x I0 {:.15e}  e^-x I1 {:.15e}", bessel_i0e(1e4)?, bessel_i1e(1e4)?);
    for w in [0.0, 0.6, 1.0] {
        let args = KernelArgs::new(2.0, 1.0, 1.0, w)?;
        println!("d/dt I0(2 sqrt(t^2 - {w}^2)) at t = 1: {:.12}", kernel_dt_i0(&args)?);
    }
    Ok(())
}
