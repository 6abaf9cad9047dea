use std::process::{Command, Output};

use cycletri::{read_instance, Instance};
use cycletri_cli::{strip_wall_time, CliError};

fn cycletri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycletri")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_writes_a_readable_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let out = cycletri(&["gen", "--seed", "3", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    match read_instance(&path).unwrap() {
        Instance::CycleTriangles(inst) => assert_eq!(inst.n(), 2),
        other => panic!("unexpected kind {}", other.kind()),
    }

    let from_file = cycletri(&["ct", "--file", path.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    assert!(stdout(&from_file).contains("check: CT mod 4 = 2: OK"));
}

#[test]
fn json_report_has_quantities_and_checks() {
    let out = cycletri(&["parity", "--seed", "4", "--parts", "3,3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "parity");
    assert_eq!(v["seed"], 4);
    assert!(v["quantities"]["eulerian transversals"].is_string());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    assert!(v["wall_time_s"].is_number());
}

#[test]
fn same_seed_same_report() {
    let a = cycletri(&["choosable", "--seed", "12", "--n", "2"]);
    let b = cycletri(&["choosable", "--seed", "12", "--n", "2"]);
    assert_eq!(strip_wall_time(&stdout(&a)), strip_wall_time(&stdout(&b)));
}

#[test]
fn invalid_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind":"cycle_triangles","n":1,"triangles":[[0,1,1]]}"#).unwrap();
    let out = cycletri(&["ct", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn degenerate_grid_exits_one() {
    let out = cycletri(&["ct", "--seed", "1", "--n", "1", "--grid", "1,1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exceeded_budget_exits_two() {
    let out = cycletri(&["ct", "--seed", "1", "--n", "3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cycletri(&["colorings", "--seed", "1", "--n", "3", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn violations_map_to_exit_three() {
    let e = CliError::from(cycletri::Error::TheoremViolation("forced".into()));
    assert_eq!(e.exit_code(), 3);
    assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
}

#[test]
fn chords_accepts_cycle_triangle_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    std::fs::write(&path, r#"{"kind":"cycle_triangles","n":2,"triangles":[[0,2,4],[1,3,5]]}"#).unwrap();
    let out = cycletri(&["chords", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("even-crossing selections: 3"));
}

#[test]
fn negative_grid_values_parse() {
    let out = cycletri(&["ct", "--seed", "2", "--n", "2", "--grid", "-1/2,3,5/7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("grid: -1/2,3,5/7"));
}
