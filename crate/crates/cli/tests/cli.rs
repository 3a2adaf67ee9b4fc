use std::path::Path;
use std::process::{Command, Output};

use fricke_cli::{embedded_golden_rows, OrbitRow, EXIT_MISMATCH};
use fricke_core::trig_field::CosSum;
use num_rational::Rational64;
use serde_json::Value;

fn fricke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fricke")).args(args).env_remove("FRICKE_THREADS").output().unwrap()
}

fn stdout_json(args: &[&str]) -> Value {
    let out = fricke(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_rows(path: &Path, rows: &[OrbitRow]) {
    std::fs::write(path, serde_json::to_string_pretty(rows).unwrap()).unwrap();
}

#[test]
fn graph_dot_of_first_row() {
    let out = fricke(&["graph", "1"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph \"orbit 1\" {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=\"(")).count(), 5);
    // 5 two-ended edges and 5 self-loops
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 10);
    let loops = edges.iter().filter(|l| {
        let mut it = l.trim().split(' ');
        let a = it.next();
        it.next();
        a == it.next()
    });
    assert_eq!(loops.count(), 5);
}

#[test]
fn graph_stats_json() {
    let v = stdout_json(&["graph", "1", "--format", "json"]);
    assert_eq!(v["selfLoops"]["x"], 3);
    assert_eq!(v["badPoints"], 1);
    assert_eq!(v["lambdaOrbits"], 1);
    assert_eq!(v["cycles"], 1);
}

#[test]
fn unknown_row_is_an_error() {
    let out = fricke(&["graph", "46"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no golden row 46"));
}

#[test]
fn cosine_triples_for_divisors_of_60() {
    let v = stdout_json(&["cosine", "--n", "3", "--divisors-of", "60"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["phis"], serde_json::json!(["0/1", "1/3", "1/3"]));
    assert!(rows.iter().all(|r| r["n"] == 3));
}

#[test]
fn cosine_budget_is_enforced() {
    let out = fricke(&["cosine", "--n", "6", "--den-bound", "200", "--budget", "1000"]);
    assert!(!out.status.success());
}

#[test]
fn cayley_third_third() {
    let v = stdout_json(&["cayley", "1/3", "1/3"]);
    assert_eq!(v["size"], 4);
    assert_eq!(v["residuals_zero"], true);
}

#[test]
fn bt_keeps_omega4() {
    let v = stdout_json(&["bt", "r_x", "1/5,2/5,1/5,2/5"]);
    assert_eq!(v["name"], "r_x");
    assert_eq!(v["omega"], serde_json::json!(["2", "3", "2"]));
    assert_eq!(v["omega4"], "7");
    let w = stdout_json(&["bt", "s_delta", "1/5,2/5,1/5,2/5"]);
    assert_eq!(w["omega_image"], w["omega"]);
}

#[test]
fn theta_marks_the_solution() {
    let v = stdout_json(&["theta", "--orbit", "31"]);
    let marked: Vec<&Value> = v.as_array().unwrap().iter().filter(|r| r.get("solution").is_some()).collect();
    assert_eq!(marked.len(), 1);
    assert_eq!(marked[0]["solution"], 31);
}

#[test]
fn eps_must_stay_below_half_the_gap() {
    let out = fricke(&["--eps", "0.01", "search"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--eps"));
}

#[test]
fn verify_saved_results() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.json");
    let golden = dir.path().join("golden.json");
    let rows = embedded_golden_rows().unwrap();
    write_rows(&results, &rows);
    let res = results.to_str().unwrap();
    let gold = golden.to_str().unwrap();

    let out = fricke(&["verify", "--results", res]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // a wrong size is reported
    let mut bad = rows.clone();
    bad[0].size += 1;
    write_rows(&golden, &bad);
    let out = fricke(&["verify", "--golden", gold, "--results", res]);
    assert_eq!(out.status.code(), Some(EXIT_MISMATCH));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["mismatches"][0].as_str().unwrap().contains("row 1"));

    // negating two coordinates is an equivalence: omega_i -> -omega_i, r_i -> 1 - r_i
    let mut flipped = rows.clone();
    let row = &mut flipped[6];
    for i in [0, 2] {
        let w: CosSum = row.omega[i].parse().unwrap();
        row.omega[i] = (-w).to_string();
    }
    let flip = |r: &str| (Rational64::from_integer(1) - r.parse::<Rational64>().unwrap()).to_string();
    row.representative.rx = flip(&row.representative.rx);
    row.representative.rz = flip(&row.representative.rz);
    write_rows(&golden, &flipped);
    let out = fricke(&["verify", "--golden", gold, "--results", res]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
