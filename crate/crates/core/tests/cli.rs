use std::path::Path;
use std::process::{Command, Output};

fn orthomotion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthomotion"))
        .args(args)
        .env_remove("ORTHOMOTION_SEED")
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| if c.is_empty() { None } else { Some(c.parse().unwrap()) }).collect())
        .collect();
    (header, rows)
}

#[test]
fn simulate_writes_paths_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path| {
        vec![
            "simulate", "--lambda", "1", "--p", "0.9", "--c", "1", "--t", "1", "--n-paths", "100", "--seed", "7",
            "--out",
        ]
        .into_iter()
        .map(String::from)
        .chain([out.to_str().unwrap().to_string()])
        .collect::<Vec<_>>()
    };
    let run = |out: &Path| {
        let args = args(out);
        orthomotion(&args.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let ra = run(&a);
    let rb = run(&b);
    assert_eq!(ra.status.code(), Some(0));
    assert_eq!(ra.stdout, rb.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("path_id,event_index,time,direction"));
    let starts = text.lines().skip(1).filter(|l| l.split(',').nth(1) == Some("0")).count();
    assert_eq!(starts, 100);

    let summary: serde_json::Value = serde_json::from_slice(&ra.stdout).unwrap();
    let sides: f64 = summary["side_fractions"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).sum();
    let vertices: f64 = summary["vertex_fractions"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).sum();
    let interior = summary["interior_fraction"].as_f64().unwrap();
    assert!((sides + vertices + interior - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_boundary_fraction_and_bisector() {
    let r = orthomotion(&["simulate", "--lambda", "1", "--p", "0.9", "--n-paths", "200000", "--seed", "11"]);
    assert_eq!(r.status.code(), Some(0));
    let s: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    let mass = (-0.1f64).exp() + (-0.9f64).exp() - (-1.0f64).exp();
    let sigma = (mass * (1.0 - mass) / 200_000.0).sqrt();
    let frac = s["boundary_fraction"].as_f64().unwrap();
    assert!((frac - mass).abs() < 4.0 * sigma, "{frac} vs {mass}");
    assert!(s["xy_correlation"].as_f64().unwrap() > 0.0);
}

#[test]
fn interior_grid_integrates_to_the_interior_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let r = orthomotion(&[
        "density", "--law", "interior", "--lambda", "1", "--p", "0.5", "--grid-x", "-1:1:201", "--grid-y",
        "-1:1:201", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["x", "y", "f"]);
    assert!(rows.iter().any(|r| r[2].is_none()));
    // trapezoid weights on the full grid, off-support cells count as 0
    let h: f64 = 0.01;
    let w = |v: f64| if (v.abs() - 1.0).abs() < 1e-12 { 0.5 } else { 1.0 };
    let total: f64 = rows.iter().map(|r| w(r[0].unwrap()) * w(r[1].unwrap()) * r[2].unwrap_or(0.0)).sum::<f64>() * h * h;
    let interior_mass = 1.0 - (2.0 * (-0.5f64).exp() - (-1.0f64).exp());
    assert!((total - interior_mass).abs() < 2e-2, "{total} vs {interior_mass}");
}

#[test]
fn hydro_grid_is_radially_symmetric_at_half() {
    let r = orthomotion(&["density", "--law", "hydro", "--p", "0.5", "--grid-x", "-2:2:9", "--grid-y", "-2:2:9"]);
    assert_eq!(r.status.code(), Some(0));
    let text = String::from_utf8(r.stdout).unwrap();
    let mut f = std::collections::HashMap::new();
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        f.insert(((v[0] * 2.0) as i64, (v[1] * 2.0) as i64), v[2]);
    }
    for (&(x, y), &v) in &f {
        assert!((v - f[&(y, x)]).abs() <= 1e-12);
        assert!((v - f[&(-x, y)]).abs() <= 1e-12);
    }
}

#[test]
fn occupation_json_keeps_atoms_apart() {
    let r = orthomotion(&["density", "--law", "occupation", "--variant", "paper", "--grid-x", "0:1:5", "--format", "json"]);
    assert_eq!(r.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    let atom = 0.5 * (-1.0f64).exp();
    assert!((v["atoms"]["atom_at_zero"].as_f64().unwrap() - atom).abs() < 1e-15);
    assert!((v["atoms"]["atom_at_t"].as_f64().unwrap() - atom).abs() < 1e-15);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows[0][1].is_null());
    assert!(rows[4][1].is_null());
    assert!(rows[2][1].as_f64().unwrap() > 0.0);
}

#[test]
fn boundary_and_cf_tables() {
    let r = orthomotion(&["density", "--law", "boundary", "--side", "1", "--grid-x", "-1:1:5"]);
    assert_eq!(r.status.code(), Some(0));
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.starts_with("eta,g\n"));
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(1), Some(""));

    let r = orthomotion(&["density", "--law", "cf", "--grid-x", "0:1:2", "--grid-y", "0:1:2"]);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.starts_with("alpha,beta,re,im\n"));
    assert_eq!(text.lines().nth(1).unwrap(), "0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0");

    assert_eq!(orthomotion(&["density", "--law", "boundary", "--side", "4"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(orthomotion(&["simulate", "--lambda", "-1"]).status.code(), Some(2));
    assert_eq!(orthomotion(&["density", "--law", "nope"]).status.code(), Some(2));
    let r = orthomotion(&["simulate", "--n-paths", "10", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(r.status.code(), Some(3));
    assert!(!r.stderr.is_empty());
}

#[test]
fn quick_verify_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.jsonl");
    let r = orthomotion(&["verify", "--quick", "--seed", "42", "--out", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let adj = lines.iter().find(|v| v.get("adjudication").is_some()).unwrap();
    assert_eq!(adj["adjudication"]["verdicts"].as_array().unwrap().len(), 2);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    assert!(summary["checks"].as_u64().unwrap() > 100);
}
