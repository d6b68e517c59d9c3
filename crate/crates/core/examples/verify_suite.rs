//! The whole verification suite at reduced size, one line per check.
//!
//!     cargo run --release --example verify_suite

use orthomotion::verify::{run_suite, SuiteConfig};
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let cfg = SuiteConfig::quick(ModelParams::new(1.0, 0.3, 1.0)?, 1.0, 42);
    let outcome = run_suite(&cfg)?;
    for r in &outcome.reports {
        println!("{r}");
    }
    println!("{}", outcome.adjudication.conclusion);
    println!("{} of {} checks failed", outcome.failures(), outcome.reports.len());
    Ok(())
}
