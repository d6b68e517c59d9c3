//! A handful of exact sample paths: switch epochs, directions and where
//! each one ends up.
//!
//!     cargo run --example simulate_paths

use orthomotion::motion::sample_path;
use orthomotion::rng::derive_stream;
use orthomotion::ModelParams;

fn main() -> orthomotion::Result<()> {
    let params = ModelParams::new(2.0, 0.9, 1.0)?;
    let t = 2.0;
    for i in 0..5 {
        let path = sample_path(&params, t, &mut derive_stream(7, i));
        let end = path.position_at(&params, t)?;
        println!(
            "path {i}: start {}, {} switches, end ({:+.4}, {:+.4}), vertical time {:.4}, {:?}",
            path.initial_direction,
            path.switch_count(),
            end.x,
            end.y,
            path.occupation_vertical(),
            path.classify_boundary()
        );
        for (time, dir) in path.switch_times.iter().zip(&path.directions_after) {
            println!("    {time:.4} -> {dir}");
        }
    }

    // the same paths in the CSV export format
    let paths = (0..3).map(|i| (i, sample_path(&params, t, &mut derive_stream(7, i))));
    orthomotion::motion::write_paths_csv(&mut std::io::stdout(), paths).expect("stdout");
    Ok(())
}
