use std::fs;
use std::process::{Command, Output};

use qwhitney::cli::TableDocument;
use qwhitney::whitney::whitney_second_triangle;
use qwhitney::ring::rational::{rat, ratio};
use qwhitney::{QMode, WhitneyParams};
use serde_json::Value;

fn qwhitney(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwhitney"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("second.json");
    let o = qwhitney(&[
        "table", "--kind", "second", "--nmax", "6", "--m", "3/2", "--r", "5/2", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc = TableDocument::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    let tri = doc.to_triangle().unwrap();
    let expected = whitney_second_triangle(&WhitneyParams::symbolic(ratio(3, 2), ratio(5, 2)), 6).unwrap();
    assert_eq!(tri, expected);
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let args = ["table", "--kind", "first", "--nmax", "5", "--m", "2", "--r", "1", "--q", "1/3"];
    let json = qwhitney(&[&args[..], &["--format", "json"]].concat());
    let csv = qwhitney(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(json.status.code(), Some(0));
    assert_eq!(csv.status.code(), Some(0));
    let doc = TableDocument::from_json(&stdout(&json)).unwrap();
    assert_eq!(doc.qmode, "rational");
    let csv_text = stdout(&csv);
    let lines: Vec<&str> = csv_text.lines().collect();
    assert_eq!(lines.len(), 6);
    for (n, line) in lines.iter().enumerate() {
        let from_doc: Vec<&str> = doc.rows.iter().filter(|r| r.n == n).map(|r| r.value.as_str()).collect();
        assert_eq!(line.split(',').collect::<Vec<_>>(), from_doc);
    }
    let tri = doc.to_triangle().unwrap();
    let expected = qwhitney::whitney::whitney_first_triangle(
        &WhitneyParams::new(rat(2), rat(1), QMode::Rational(ratio(1, 3))).unwrap(),
        5,
    )
    .unwrap();
    assert_eq!(tri, expected);
}

#[test]
fn verify_with_grid_file_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    let report = dir.path().join("report.jsonl");
    fs::write(&grid, r#"[["1", "0"], [2, "1/2"]]"#).unwrap();
    let o = qwhitney(&[
        "verify",
        "--suite",
        "vertical_first,orthogonality",
        "--nmax",
        "5",
        "--grid",
        grid.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = stdout(&o);
    assert_eq!(summary.lines().count(), 2);
    assert!(summary.lines().all(|l| l.ends_with("\tpass")));
    let text = fs::read_to_string(&report).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!records.is_empty());
    for rec in &records {
        assert_eq!(rec["pass"], Value::Bool(true));
        assert!(rec["lhs"].is_string() && rec["rhs"].is_string());
        let id = rec["id"].as_str().unwrap();
        assert!(id == "vertical_first" || id == "orthogonality");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "--kind", "first", "--nmax", "3", "--m", "1", "--r", "0", "--q", "0.5"][..],
        &["verify", "--suite", "no_such_identity"],
        &["verify", "--grid", "/nonexistent/grid.json"],
        &["dist", "--family", "heine", "--q", "1.5", "--lambda", "0.5"],
        &["hankel", "--m", "1", "--r-values", "0,1", "--q", "symbolic", "--order", "9"],
        &["frobnicate"],
    ] {
        let o = qwhitney(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn dist_sample_is_reproducible() {
    let args = ["dist", "--family", "euler", "--q", "0.5", "--lambda", "0.8", "--op", "sample", "--count", "50", "--seed", "7"];
    let a = qwhitney(&args);
    let b = qwhitney(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 50);
}

#[test]
fn hankel_reports_one_row_per_r() {
    let o = qwhitney(&["hankel", "--m", "1", "--r-values", "0,1", "--q", "1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].split('\t').skip(1).collect::<Vec<_>>(), rows[1].split('\t').skip(1).collect::<Vec<_>>());
}
