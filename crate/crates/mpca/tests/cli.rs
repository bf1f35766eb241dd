//! Exercises the compiled binary: exit codes, report shape, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mpca"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_csv(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const SQUARE: &str = "0,0\n0,1\n1,0\n1,1\n";

#[test]
fn analyze_happy_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "square.csv", SQUARE);
    let out = run(&["analyze", "--input", &input, "--scale", "0:1", "--standard", "-k", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mpca-report v1"));
    assert!(text.contains("[eigenvalues]"));
    assert!(!text.contains("NaN"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed scale flag is a usage problem too
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "square.csv", SQUARE);
    let out = run(&["analyze", "--input", &input, "--scale", "nonsense", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_csv_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "bad.csv", "1,2\n3,oops\n5,6\n");
    let out = run(&["analyze", "--input", &input, "--scale", "0:1", "--standard", "-k", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("row"), "error should locate the cell: {err}");
}

#[test]
fn empty_scale_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "line.csv", "0,0\n1,0\n2,0\n");
    let out = run(&["analyze", "--input", &input, "--scale", "0.3:0.4", "--standard", "-k", "1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn insufficient_points_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "one.csv", "1,2\n");
    let out = run(&["analyze", "--input", &input, "--scale", "0:1", "--standard", "-k", "1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn sweep_writes_tables_without_nan() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "line.csv", "0,0\n1,0\n2,0\n5,0\n");
    let report = dir.path().join("report.txt");
    let tables = dir.path().join("tables");
    let out = run(&[
        "sweep", "--input", &input, "--step", "0.1", "-k", "1",
        "--output", report.to_str().unwrap(),
        "--csv-tables", tables.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("empty"), "sparse data should produce empty cells");
    assert!(!text.contains("NaN"));
    for name in ["angle", "ratio", "exempted"] {
        let csv = std::fs::read_to_string(tables.join(format!("{name}.csv"))).unwrap();
        assert!(!csv.contains("NaN"), "{name} table has NaN");
    }
}

#[test]
fn sweep_accepts_reference_vector() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "square.csv", SQUARE);
    let out = run(&["sweep", "--input", &input, "--step", "0.5", "-k", "1", "--reference", "1,0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["sweep", "--input", &input, "--step", "0.5", "-k", "1", "--reference", "0,0"]);
    assert_eq!(out.status.code(), Some(2), "zero reference must be rejected");
}

#[test]
fn cluster_reports_medoids() {
    let dir = tempfile::tempdir().unwrap();
    let out_csv = dir.path().join("pattern.csv");
    let gen = run(&[
        "generate", "--kind", "repeated_pattern", "--seed", "1",
        "--output", out_csv.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let out = run(&[
        "cluster", "--input", out_csv.to_str().unwrap(), "--step", "0.1", "-k", "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[cluster 0]"));
    assert!(text.contains("[pseudo-t2]"));
}

#[test]
fn generate_is_deterministic_and_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "generate", "--kind", "plane_with_outliers", "--seed", "11",
            "--points", "60", "--outliers", "2",
            "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
        "same seed must reproduce the same CSV"
    );
    let meta = std::fs::read_to_string(dir.path().join("a.csv.meta")).unwrap();
    assert!(meta.contains("kind = plane_with_outliers"));
    assert!(meta.contains("seed = 11"));
    assert!(meta.contains("d1 = "));

    let out = run(&["generate", "--kind", "no_such_kind", "--seed", "1", "--output", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_round_trips_through_parser() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "square.csv", SQUARE);
    let out = run(&["analyze", "--input", &input, "--scale", "0:1", "--standard", "-k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed = mpca::io::report::from_text(&text).unwrap();
    assert_eq!(mpca::io::report::to_text(&parsed), text);
}
