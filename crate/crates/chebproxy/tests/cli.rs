use std::process::{Command, Output};

use chebproxy::report::Report;
use chebproxy::tensor_file::TensorFile;
use chebproxy_core::ChebPoly;

fn chebproxy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebproxy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn solves_a_line() {
    let out = chebproxy(&["solve", "--func", "x1 - 0.25", "--interval", "-1,1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r.dimension, 1);
    assert_eq!(r.roots.len(), 1);
    assert!((r.roots[0].point[0] - 0.25).abs() < 1e-15);
    assert!(r.roots[0].flags.is_empty());
}

#[test]
fn two_dimensional_list_syntax_with_negative_values() {
    let out = chebproxy(&[
        "solve",
        "--func",
        "sin(x1)",
        "-x2",
        "--interval",
        "-4,4",
        "-1,1",
        "--threads",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r.interval, vec![[-4.0, 4.0], [-1.0, 1.0]]);
    let xs: Vec<f64> = r.roots.iter().map(|root| root.point[0]).collect();
    assert_eq!(xs.len(), 3);
    let pi = std::f64::consts::PI;
    for (x, want) in xs.iter().zip([-pi, 0.0, pi]) {
        assert!((x - want).abs() < 1e-14, "{xs:?}");
    }
    assert!(r.roots.iter().all(|root| root.point[1].abs() < 1e-15));
}

#[test]
fn tensor_file_input_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = 100;
    let mut coeffs = vec![0.0; d + 1];
    coeffs[d] = 1.0;
    let poly = ChebPoly::univariate(coeffs).unwrap();
    let tensor = dir.path().join("t100.json");
    TensorFile::from_poly(&poly, None).write(&tensor).unwrap();
    let target = dir.path().join("roots.json");
    let out = chebproxy(&[
        "solve",
        "--func",
        &format!("@{}", tensor.display()),
        "--interval",
        "-1,1",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(r.roots.len(), d);
    for (k, root) in r.roots.iter().enumerate() {
        let want = ((d - 1 - k) as f64 + 0.5) * std::f64::consts::PI / d as f64;
        assert!((root.point[0] - want.cos()).abs() < 1e-15);
    }
}

#[test]
fn double_root_is_flagged_with_exit_two() {
    let out = chebproxy(&["solve", "--func", "x1^2", "--interval", "-1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert!(r.roots.iter().any(|root| !root.flags.is_empty()));
}

#[test]
fn errors_exit_one() {
    for args in [
        &["solve", "--func", "x1+", "--interval", "-1,1"][..],
        &["solve", "--func", "x1", "--interval", "1"],
        &["solve", "--func", "x1", "x2", "--interval", "-1,1"],
        &[
            "solve",
            "--func",
            "@/nonexistent/tensor.json",
            "--interval",
            "-1,1",
        ],
        &["verify", "--only", "12"],
        &["tau", "--alpha", "0", "--beta", "0", "--n", "10"],
    ] {
        let out = chebproxy(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn tau_table() {
    let out = chebproxy(&["tau", "--alpha", "0.5", "--beta", "0.25", "--n", "10,100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "10");
    assert_eq!(rows[1][0], "100");
    let degree: usize = rows[1][1].parse().unwrap();
    assert!(degree <= 100);
}

#[test]
fn subdivision_degrees() {
    let out = chebproxy(&["subdiv-degrees", "--n", "100", "--levels", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split_whitespace().count(), 2);
    assert_eq!(lines[1].split_whitespace().count(), 3);
}

#[test]
fn bench_prints_rows_and_slope() {
    let out = chebproxy(&[
        "bench",
        "--dim",
        "1",
        "--degrees",
        "4,8",
        "--trials",
        "2",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert!(text.contains("slope"));
}
