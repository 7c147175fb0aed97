use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn metakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metakit")).args(args).output().expect("binary runs")
}

fn metakit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_metakit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dual_of_the_triple_cover() {
    let out = metakit(&["dual", "--catalog", "sl2-n3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["lambda_basis"], serde_json::json!([[3]]));
    assert_eq!(v["result"]["index"], 3);
    assert_eq!(v["result"]["n_alpha"][0]["n_alpha"], 3);
    assert_eq!(v["result"]["dimensions"]["whittaker"], 3);
}

#[test]
fn gk_identity_holds() {
    let out = metakit(&["gk-check", "--catalog", "sl2-n3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rank_one"]["holds"], true);
}

#[test]
fn hilbert_symbol_of_t_and_three() {
    let v = json(&metakit(&["hilbert", "--q", "7", "--n", "3", "--s", "t", "--t", "3"]));
    assert_eq!(v["result"]["exponent"], 2);
    assert_eq!(v["result"]["residue"], 4);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(metakit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(metakit(&["dual", "--catalog", "e8-n5"]).status.code(), Some(2));
    let out = metakit(&["dual", "--q", "11", "--n", "3", "--Q", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 ∤ 10"));
}

#[test]
fn datum_from_standard_input() {
    let bad = r#"{"rank": 2, "simple_coroots": [[1,0],[0,1]], "simple_roots": [[2,-1],[-1,2]], "B": [[2,-1],[0,2]], "n": 2}"#;
    let out = metakit_stdin(&["dual", "--input", "-"], bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("B is symmetric"));

    let broken = "{\n \"rank\": 1,\n \"n\": }";
    let out = metakit_stdin(&["dual", "--input", "-"], broken);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let good = r#"{"rank": 2, "simple_coroots": [[1,0],[0,1]], "simple_roots": [[2,-1],[-1,2]], "B": [[2,-1],[-1,2]], "n": 2}"#;
    let out = metakit_stdin(&["hecke-check", "--input", "-", "--len", "4"], good);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        &["hecke-check", "--catalog", "sl3-n2", "--len", "4", "--seed", "11"][..],
        &["cocycle-check", "--catalog", "sl2-n3", "--trials", "50"],
        &["lattice", "--catalog", "sp4-n4", "--height", "6"],
    ] {
        let a = metakit(args);
        let b = metakit(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn failed_checks_exit_one() {
    let out = metakit(&["cocycle-check", "--catalog", "sl2-n3", "--trials", "20", "--format", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let failing = text.lines().any(|l| l.trim_start().starts_with("FAIL"));
    assert_eq!(out.status.code(), Some(if failing { 1 } else { 0 }));
}

#[test]
fn rank_one_engine_subcommands() {
    let v = json(&metakit(&["iwahori-sl2", "--q", "17", "--n", "4", "--Q", "1", "--l", "2"]));
    assert_eq!(v["result"]["table"][0]["value"], "0");
    let out = metakit(&["satake-sl2", "--catalog", "sl2-n2", "--lmax", "2", "--skip-products"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(metakit(&["satake-sl2", "--catalog", "sl3-n2"]).status.code(), Some(2));
}
