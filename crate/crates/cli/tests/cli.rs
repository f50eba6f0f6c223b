use std::process::{Command, Output};

fn alfeld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alfeld")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dim_prints_a_single_integer() {
    let o = alfeld(&["dim", "--n", "2", "--r", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12");

    let o = alfeld(&["dim", "--n", "3", "--r", "1", "--k", "5", "--method", "spline-kernel"]);
    assert_eq!(stdout(&o).trim(), "68");
}

#[test]
fn invalid_parameters_exit_with_two() {
    assert_eq!(alfeld(&["dim", "--n", "2", "--r", "-1", "--k", "3"]).status.code(), Some(2));
    assert_eq!(alfeld(&["dim", "--n", "0", "--r", "1", "--k", "3"]).status.code(), Some(2));
    assert_eq!(alfeld(&["sweep", "--n", "3..2", "--r", "0", "--k", "0", "--out", "x.csv"]).status.code(), Some(2));
}

#[test]
fn negative_degree_is_invalid() {
    let o = alfeld(&["dim", "--n", "2", "--r", "1", "--k", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn size_cap_exits_with_three() {
    let o = alfeld(&["--max-entries", "100", "dim", "--n", "3", "--r", "2", "--k", "8", "--method", "spline-kernel"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_agrees_on_small_grid() {
    let o = alfeld(&["verify", "--n", "2", "--r", "1", "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,r,k,method,dimension,agree\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = alfeld(&["sweep", "--n", "2..3", "--r", "0..=1", "--k", "0..4", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,k,method,dimension,agree"));
    // ranges are inclusive: 2 n values x 2 r values x 5 degrees x 4 default methods
    assert_eq!(lines.clone().count(), 80);
    assert!(lines.any(|l| l == "2,1,3,formula,12,true"));

    let json = dir.path().join("out.json");
    let o = alfeld(&["sweep", "--n", "2", "--r", "1", "--k", "3", "--methods", "formula,euler", "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"dimension\": 12"));
    assert!(text.contains("\"tool_version\""));
}

#[test]
fn sweep_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        alfeld(&["sweep", "--n", "2", "--r", "0..3", "--k", "0..6", "--out", p.to_str().unwrap()]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exponents_report() {
    let o = alfeld(&["exponents", "--n", "3", "--m", "3"]);
    let text = stdout(&o);
    assert!(text.contains("5 6 7"), "{text}");
    let o = alfeld(&["exponents", "--n", "2", "--m", "2"]);
    assert!(stdout(&o).contains("3 3"));
}

#[test]
fn iso_prints_a_witness() {
    let o = alfeld(&["iso", "--n", "3", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
}

#[test]
fn homology_lists_top_degree_only() {
    let o = alfeld(&["homology", "--n", "2", "--r", "1", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "3,2,12"), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("3,")).any(|l| l == "3,1,0"));
}

#[test]
fn spline_dim_reads_a_complex_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edge.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"],["1","1"]], "cells": [[0,1,2],[1,2,3]]}"#,
    )
    .unwrap();
    let o = alfeld(&["spline-dim", "--complex", path.to_str().unwrap(), "--r", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    // P_3 plus L^2 P_1
    assert_eq!(stdout(&o).trim(), "13");

    let o = alfeld(&["spline-dim", "--complex", dir.path().join("missing.json").to_str().unwrap(), "--r", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
