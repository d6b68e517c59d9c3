//! Command line front end of the `orthomotion` binary.
//!
//! Three subcommands: `simulate` writes paths and an ensemble summary,
//! `density` tabulates one of the laws on a grid, `verify` runs the whole
//! verification suite and prints one JSON line per check.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 anything else.

use crate::error::Error;
use crate::exact::{
    boundary_density, hydro_density, interior_density, joint_cf, occupation_law, vertex_mass,
    OccupationVariant, Side,
};
use crate::motion::{sample_path, write_paths_csv, ModelParams};
use crate::verify::ensemble::{ordered_draws, summarize, PathOutcome};
use crate::verify::stats::{covariance, mean_var};
use crate::verify::{run_suite, SuiteConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFRASTRUCTURE: i32 = 3;

/// Default seed when neither `--seed` nor `ORTHOMOTION_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_INFRASTRUCTURE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "orthomotion", version, about = "Planar random motion with orthogonal directions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate paths; write them as CSV and print a JSON summary.
    Simulate(SimulateArgs),
    /// Evaluate a law on a grid.
    Density(DensityArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, CliError> {
        let params = ModelParams::new(self.lambda, self.p, self.c).map_err(|e| usage(e.to_string()))?;
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(usage(format!("t must be positive, got {}", self.t)));
        }
        Ok(params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Interior,
    Boundary,
    Occupation,
    Hydro,
    Cf,
}

/// `min:max:steps`, `steps >= 2` points including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / n as f64
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected min:max:steps, got {s:?}"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("bad min {:?}: {e}", parts[0]))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("bad max {:?}: {e}", parts[1]))?;
        let steps: usize = parts[2].parse().map_err(|e| format!("bad steps {:?}: {e}", parts[2]))?;
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("need finite min < max, got {min}:{max}"));
        }
        if steps < 2 {
            return Err(format!("need at least 2 steps, got {steps}"));
        }
        Ok(GridSpec { min, max, steps })
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1000)]
    pub n_paths: u64,
    #[arg(long, env = "ORTHOMOTION_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Path CSV destination; without it only the summary is produced.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Law::Interior)]
    pub law: Law,
    /// `x`, or `eta` for a side, `s` for the occupation time, `alpha` for the cf.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_x: Option<GridSpec>,
    /// `y`, or `beta` for the cf; ignored by one-dimensional laws.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_y: Option<GridSpec>,
    #[arg(long, default_value = "symmetrized")]
    pub variant: OccupationVariant,
    /// Side index 0..3 for the boundary law.
    #[arg(long, default_value_t = 0)]
    pub side: u8,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Paths per ensemble; defaults to 10^6, or 10^5 with `--quick`.
    #[arg(long)]
    pub n_paths: Option<u64>,
    #[arg(long, env = "ORTHOMOTION_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, stdout),
        Command::Density(a) => cmd_density(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn open_out(path: &Option<PathBuf>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display()))))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => f(stdout)?,
    }
    Ok(())
}

/// Ensemble statistics printed by `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub params: ModelParams,
    pub t: f64,
    pub n_paths: u64,
    pub seed: u64,
    pub interior_fraction: f64,
    /// Open sides, in side order.
    pub side_fractions: [f64; 4],
    /// Vertices `k` at the end of direction `d_k`.
    pub vertex_fractions: [f64; 4],
    pub boundary_fraction: f64,
    pub occupation_mean: f64,
    pub occupation_variance: f64,
    pub mean_switches: f64,
    pub xy_correlation: f64,
}

pub fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = a.model.params()?;
    if a.n_paths == 0 {
        return Err(usage("n-paths must be at least 1"));
    }
    let t = a.model.t;
    let paths = ordered_draws(a.n_paths, a.seed, |rng| sample_path(&params, t, rng));
    if let Some(out) = &a.out {
        let mut sink = io::sink();
        open_out(&Some(out.clone()), &mut sink, |w| {
            write_paths_csv(w, paths.iter().enumerate().map(|(i, p)| (i as u64, p.clone())))
        })?;
    }
    let outcomes: Vec<PathOutcome> = paths
        .iter()
        .map(|path| PathOutcome {
            point: path.position_at(&params, t).expect("t is the horizon"),
            class: path.classify_boundary(),
            occupation: path.occupation_vertical(),
            switches: path.switch_count(),
        })
        .collect();
    let s = summarize(&params, t, a.seed, &outcomes, &[]);
    let n = a.n_paths as f64;
    let frac = |k: u64| k as f64 / n;
    let (occ_mean, occ_var) = mean_var(&s.occupation_samples);
    let xs: Vec<f64> = outcomes.iter().map(|o| o.point.x).collect();
    let ys: Vec<f64> = outcomes.iter().map(|o| o.point.y).collect();
    let (_, vx) = mean_var(&xs);
    let (_, vy) = mean_var(&ys);
    let summary = SimulationSummary {
        params,
        t,
        n_paths: a.n_paths,
        seed: a.seed,
        interior_fraction: frac(s.boundary_counts.interior),
        side_fractions: s.boundary_counts.sides.map(frac),
        vertex_fractions: s.boundary_counts.vertices.map(frac),
        boundary_fraction: 1.0 - frac(s.boundary_counts.interior),
        occupation_mean: occ_mean,
        occupation_variance: if a.n_paths > 1 { occ_var } else { 0.0 },
        mean_switches: outcomes.iter().map(|o| o.switches as f64).sum::<f64>() / n,
        xy_correlation: if vx > 0.0 && vy > 0.0 {
            covariance(&xs, &ys) / (vx * vy).sqrt()
        } else {
            0.0
        },
    };
    writeln!(stdout, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    Ok(EXIT_OK)
}

/// A tabulated law: named columns, rows of optional values, atoms aside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub law: &'static str,
    pub params: ModelParams,
    pub t: f64,
    pub columns: Vec<&'static str>,
    /// `None` marks a grid point outside the support.
    pub rows: Vec<Vec<Option<f64>>>,
    pub atoms: Value,
}

fn fmt_num(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

impl Table {
    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "{}", serde_json::to_string(self).expect("table serializes"))
    }

    fn in_support(&self) -> usize {
        self.rows.iter().filter(|r| r.last().is_some_and(|v| v.is_some())).count()
    }
}

fn axis(spec: Option<GridSpec>, min: f64, max: f64, steps: usize) -> Vec<f64> {
    spec.unwrap_or(GridSpec { min, max, steps }).points()
}

/// Tabulates the law selected by `a`.
pub fn density_table(a: &DensityArgs) -> Result<Table, CliError> {
    let params = a.model.params()?;
    let t = a.model.t;
    let ct = params.c * t;
    let mut rows = Vec::new();
    let mut atoms = Value::Null;
    let (law, columns): (&'static str, Vec<&'static str>) = match a.law {
        Law::Interior => {
            for x in axis(a.grid_x, -ct, ct, 101) {
                for y in axis(a.grid_y, -ct, ct, 101) {
                    let f = if x.abs() + y.abs() < ct {
                        Some(interior_density(&params, x, y, t)?)
                    } else {
                        None
                    };
                    rows.push(vec![Some(x), Some(y), f]);
                }
            }
            ("interior", vec!["x", "y", "f"])
        }
        Law::Hydro => {
            let h = 3.0 * t.sqrt();
            for x in axis(a.grid_x, -h, h, 101) {
                for y in axis(a.grid_y, -h, h, 101) {
                    rows.push(vec![Some(x), Some(y), Some(hydro_density(params.p, x, y, t)?)]);
                }
            }
            ("hydro", vec!["x", "y", "f"])
        }
        Law::Boundary => {
            let side = Side::new(a.side).map_err(|e| usage(e.to_string()))?;
            for eta in axis(a.grid_x, -ct, ct, 101) {
                let g = if eta.abs() < ct {
                    Some(boundary_density(&params, eta, t, side)?)
                } else {
                    None
                };
                rows.push(vec![Some(eta), g]);
            }
            let v = vertex_mass(&params, t);
            atoms = json!({
                "side": side.index(),
                "vertex_low": v,
                "vertex_high": v,
            });
            ("boundary", vec!["eta", "g"])
        }
        Law::Occupation => {
            let law = occupation_law(params.lambda, t, a.variant)?;
            for s in axis(a.grid_x, 0.0, t, 101) {
                let h = if s > 0.0 && s < t { Some(law.density(s)?) } else { None };
                rows.push(vec![Some(s), h]);
            }
            atoms = json!({
                "variant": a.variant,
                "atom_at_zero": law.atom_at_zero,
                "atom_at_t": law.atom_at_t,
            });
            ("occupation", vec!["s", "h"])
        }
        Law::Cf => {
            for alpha in axis(a.grid_x, -3.0, 3.0, 25) {
                for beta in axis(a.grid_y, -3.0, 3.0, 25) {
                    let z = joint_cf(&params, alpha, beta, t);
                    rows.push(vec![Some(alpha), Some(beta), Some(z.re), Some(z.im)]);
                }
            }
            ("cf", vec!["alpha", "beta", "re", "im"])
        }
    };
    let table = Table {
        law,
        params,
        t,
        columns,
        rows,
        atoms,
    };
    if table.in_support() == 0 {
        return Err(usage(format!("the grid lies entirely outside the support of the {law} law")));
    }
    Ok(table)
}

pub fn cmd_density(a: &DensityArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let table = density_table(a)?;
    open_out(&a.out, stdout, |w| match a.format {
        Format::Csv => table.write_csv(w),
        Format::Json => table.write_json(w),
    })?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = a.model.params()?;
    let mut cfg = if a.quick {
        SuiteConfig::quick(params, a.model.t, a.seed)
    } else {
        SuiteConfig::full(params, a.model.t, a.seed)
    };
    if let Some(n) = a.n_paths {
        if n < 2 {
            return Err(usage("n-paths must be at least 2 for verification"));
        }
        cfg.n_paths = n;
    }
    let outcome = run_suite(&cfg)?;
    let failed = outcome.failures();
    open_out(&a.out, stdout, |w| {
        for r in &outcome.reports {
            writeln!(w, "{}", r.to_json_line())?;
        }
        writeln!(w, "{}", json!({ "adjudication": outcome.adjudication }))?;
        writeln!(w, "{}", json!({ "hydro": outcome.hydro, "occupation_sweep": outcome.occupation_sweep }))?;
        writeln!(
            w,
            "{}",
            json!({ "summary": {
                "checks": outcome.reports.len(),
                "passed": outcome.reports.len() - failed,
                "failed": failed,
                "seed": cfg.seed,
                "n_paths": cfg.n_paths,
            }})
        )
    })?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("orthomotion").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "-1:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!("1:0:5".parse::<GridSpec>().is_err());
        assert!("0:1:1".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["simulate", "--p", "1.5"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["density", "--grid-x", "0:1:1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["density", "--law", "interior", "--grid-x", "5:6:3", "--grid-y", "5:6:3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("outside the support"));
    }

    #[test]
    fn occupation_midpoint() {
        let (code, out, _) = run_args(&["density", "--law", "occupation", "--grid-x", "0:1:3"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "s,h");
        assert!(lines[1].ends_with(','));
        assert!(lines[2].starts_with("5.0000000000000000e-1,6.73670022943"), "{}", lines[2]);
        assert!(lines[3].ends_with(','));
    }

    #[test]
    fn simulate_is_deterministic() {
        let args = ["simulate", "--lambda", "1", "--p", "0.9", "--n-paths", "100", "--seed", "7"];
        let a = run_args(&args);
        let b = run_args(&args);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        let v: Value = serde_json::from_str(a.1.trim()).unwrap();
        assert_eq!(v["n_paths"], 100);
    }
}
