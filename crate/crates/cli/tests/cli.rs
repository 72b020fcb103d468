//! End-to-end checks of the binary: exit codes, golden outputs, and
//! byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests");
    p.push("fixtures");
    p.push(name);
    p.to_str().expect("fixture path is valid UTF-8").to_owned()
}

fn splitspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitspan"))
        .args(args)
        .env_remove("SPLITSPAN_GUARDS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hexagon_subdivision_matches_the_worked_example() {
    let out = splitspan(&[
        "subdivide",
        &fixture("hexagon.json"),
        "--weights",
        &fixture("hexagon_w.json"),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["k"], 2);
    assert_eq!(
        v["maximal_faces"],
        serde_json::json!([[1, 2, 5, 6, 7], [2, 3, 4, 5, 7]])
    );
}

#[test]
fn output_bytes_are_identical_across_runs() {
    let args = [
        "gale",
        &fixture("square_center.json"),
        "--weights",
        &fixture("square_center_fan_w.json"),
        "--face",
        "1,2,5",
    ];
    let first = splitspan(&args);
    let second = splitspan(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn malformed_json_is_a_usage_error_with_a_location() {
    let out = splitspan(&[
        "subdivide",
        &fixture("truncated.json"),
        "--weights",
        &fixture("hexagon_w.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn wrong_weight_count_is_a_domain_error() {
    let out = splitspan(&[
        "subdivide",
        &fixture("square_center.json"),
        "--weights",
        &fixture("hexagon_w.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn guard_refusals_name_the_guard() {
    let out = splitspan(&["hypersimplex", "--k", "3", "--n", "7", "--three-splits"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("max_points"), "stderr: {err}");

    let raised = splitspan(&[
        "hypersimplex",
        "--k",
        "3",
        "--n",
        "7",
        "--three-splits",
        "--max-points",
        "35",
        "--max-dim",
        "6",
    ]);
    let v = stdout_json(&raised);
    assert_eq!(v["three_splits"].as_array().map(Vec::len), Some(210));
}

#[test]
fn the_closed_count_formula_needs_no_guard() {
    let out = splitspan(&["hypersimplex", "--k", "3", "--n", "7", "--count"]);
    let v = stdout_json(&out);
    assert_eq!(v["three_split_count"], 210);
    assert_eq!(v["vertex_count"], 35);
}

#[test]
fn small_hypersimplex_two_split_counts() {
    let out = splitspan(&["hypersimplex", "--k", "2", "--n", "4", "--two-splits"]);
    let v = stdout_json(&out);
    assert_eq!(v["two_split_count"], 3);

    let out = splitspan(&["hypersimplex", "--k", "2", "--n", "5", "--two-splits"]);
    let v = stdout_json(&out);
    assert_eq!(v["two_split_count"], 10);
}

#[test]
fn the_cube_secondary_polytope_golden_counts() {
    let out = splitspan(&["secondary", &fixture("cube3.json")]);
    let v = stdout_json(&out);
    assert_eq!(v["vertex_count"], 74);
    assert_eq!(v["facet_count"], 22);
}

#[test]
fn realizing_a_square_as_a_tight_span() {
    let out = splitspan(&["realize-tightspan", &fixture("square_polytope.json")]);
    let v = stdout_json(&out);
    assert_eq!(
        v["points"],
        serde_json::json!([
            ["-1", "0"],
            ["0", "-1"],
            ["0", "1"],
            ["1", "0"],
            ["0", "0"]
        ])
    );
    assert_eq!(v["weights"], serde_json::json!(["1", "1", "1", "1", "0"]));
}

#[test]
fn face_queries_need_weights() {
    let out = splitspan(&["gale", &fixture("square_center.json"), "--face", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certification_is_job_count_invariant() {
    let base = [
        "certify",
        "--k",
        "3",
        "--n",
        "6",
        "--max-points",
        "20",
        "--max-dim",
        "5",
    ];
    let serial = splitspan(&base);
    let mut with_jobs = base.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let parallel = splitspan(&with_jobs);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    let v = stdout_json(&serial);
    assert_eq!(v["split_count"], 30);
    assert_eq!(v["all_certified"], true);
}
