use std::process::{Command, Output};

use serde_json::Value;

fn symplie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symplie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = symplie(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn validate_prints_both_checks() {
    let o = symplie(&["validate", "--class", "n4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Jacobi: OK, dω=0: OK");
}

#[test]
fn validate_reads_a_bracket_file() {
    let file = json(&["catalog", "--class", "r2p", "--json"]);
    let path = std::env::temp_dir().join(format!("symplie-cli-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let o = symplie(&["validate", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("Jacobi: OK"));
}

#[test]
fn invariants_match_the_table() {
    let v = json(&["invariants", "--class", "d4_2:w2", "--json"]);
    let r = &v[0];
    assert_eq!(r["dim_der_omega"], 1);
    assert_eq!(r["dim_der"], 5);
    assert_eq!(r["matches_table"], true);
}

#[test]
fn ricci_json_is_consistent() {
    let v = json(&["ricci", "--class", "n4", "--json"]);
    for key in ["class", "ricci_matrix", "signature", "scalar_curvature", "einstein"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let m = v["ricci_matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
    let sig = &v["signature"];
    let total: u64 = ["positive", "negative", "zero"].iter().map(|k| sig[k].as_u64().unwrap()).sum();
    assert_eq!(total, 4);
}

#[test]
fn single_curve_verifies() {
    let v = json(&["degenerate", "--curve", "ex2:xi_u", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(symplie(&["validate", "--class", "no-such-class"]).status.code(), Some(2));
    assert_eq!(symplie(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(symplie(&["validate"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    assert_eq!(symplie(&["validate", "--file", "/nonexistent/bracket.json"]).status.code(), Some(3));
    assert_eq!(symplie(&["hasse", "--dot", "/nonexistent/dir/graph.dot"]).status.code(), Some(3));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["theorem-b", "--samples", "5", "--seed", "11", "--json"];
    let (a, b) = (symplie(&args), symplie(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
