mod common;

use std::ffi::OsStr;
use std::path::Path;
use std::process::{Command, Output};

use common::*;
use polydual::format::write_points;

fn run<S: AsRef<OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydual"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_polytope(dir: &Path, name: &str, pts: &[polydual::IntVec3]) -> String {
    let path = dir.join(name);
    std::fs::write(&path, write_points(pts)).unwrap();
    path.display().to_string()
}

fn octahedron() -> Vec<polydual::IntVec3> {
    vec![
        v(1, 0, 0),
        v(-1, 0, 0),
        v(0, 1, 0),
        v(0, -1, 0),
        v(0, 0, 1),
        v(0, 0, -1),
    ]
}

#[test]
fn verify_bundled_scenarios() {
    let paths: Vec<String> = SCENARIOS
        .iter()
        .map(|n| scenario_path(n).display().to_string())
        .collect();
    let o = run(&[&["verify".to_string()], paths.as_slice()].concat());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("4 scenario(s), 0 failed"), "{text}");
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_json_report() {
    let o = run(&["--json", "verify", scenario_path("z10").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report[0]["rho"], 14);
    assert_eq!(report[0]["rho_dual"], 6);
    assert_eq!(report[0]["basis_index"], 2);
    assert_eq!(report[0]["passed"], true);
}

#[test]
fn hull_and_dual() {
    let dir = tempfile::tempdir().unwrap();
    let mut pts = octahedron();
    pts.push(v(0, 0, 0));
    let f = write_polytope(dir.path(), "o.pts", &pts);
    let o = run(&["hull", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f-vector: 6 12 8"));

    let o = run(&["dual", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("1 1 1") && text.contains("-1 -1 -1"),
        "{text}"
    );
    assert!(text.contains("integral: true"));
}

#[test]
fn rho_and_l0() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario("w10");
    let f = write_polytope(dir.path(), "w.pts", &s.delta_vertices);
    let o = run(&["rho", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("rho: 18"));
    let o = run(&["l0", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rk L0: 0"));

    // the simplex conv(0, e1, e2, e3) does not have the origin inside
    let g = write_polytope(
        dir.path(),
        "s.pts",
        &[v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
    );
    assert_eq!(run(&["rho", &g]).status.code(), Some(1));
    assert_eq!(run(&["l0", &g]).status.code(), Some(1));
}

#[test]
fn iso_found_and_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario("z10");
    let a = write_polytope(dir.path(), "a.pts", &s.delta_vertices);
    let dual =
        polydual::reflexive_dual(&polydual::convex_hull(&s.delta_prime_vertices).unwrap()).unwrap();
    let b = write_polytope(dir.path(), "b.pts", dual.vertices());
    let o = run(&["iso", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("convention"));
    let c = write_polytope(dir.path(), "c.pts", &octahedron());
    assert_eq!(run(&["iso", &a, &c]).status.code(), Some(1));
}

#[test]
fn search_reports_exhaustion() {
    let path = scenario_path("w10");
    let o = run(&["search", path.to_str().unwrap(), "--require-l0-zero"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with('#'));
    assert!(text.contains("exhausted: true"), "{text}");

    let o = run(&["--json", "search", path.to_str().unwrap(), "--budget", "1"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["exhausted"], false);
    assert_eq!(report["examined"], 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run::<&str>(&[]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "search",
            scenario_path("w10").to_str().unwrap(),
            "--budget",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let flat = write_polytope(
        dir.path(),
        "flat.pts",
        &[v(0, 0, 0), v(1, 0, 0), v(0, 1, 0)],
    );
    assert_eq!(run(&["hull", &flat]).status.code(), Some(2));
    let shifted: Vec<_> = octahedron().iter().map(|p| *p + v(5, 0, 0)).collect();
    let off = write_polytope(dir.path(), "off.pts", &shifted);
    assert_eq!(run(&["dual", &off]).status.code(), Some(2));
}
