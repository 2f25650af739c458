use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn mi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mi")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_single_point() {
    let out = mi(&["compute", "--n", "2", "--function", "class1:i=0", "--p", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["mi_bits"].as_f64().unwrap() - 0.131_674_625_670_182_07).abs() <= 1e-15);
    assert!(v["margin_bits"].as_f64().unwrap() > 0.0);
}

#[test]
fn compute_from_table_file_and_dump_joint() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("f.json");
    let joint = dir.path().join("joint.csv");
    fs::write(&table, r#"{"n": 2, "bits_hex": "01"}"#).unwrap();
    let out = mi(&[
        "compute",
        "--table",
        table.to_str().unwrap(),
        "--p",
        "1/4",
        "--dump-joint",
        joint.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(&joint).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "y_index,p0_num,p0_den,p1_num,p1_den");
    assert_eq!(lines[1], "0,7,64,9,64");
    assert_eq!(lines.len(), 5);
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = mi(&["verify", "--n", "2..4", "--p-den", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
    let reports = v["reports"].as_array().unwrap();
    // classes 1 and 2 plus 3/4 for r = 1..n-1, over n = 2..4, 5 grid points
    assert_eq!(reports.len(), (4 + 6 + 8) * 5);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    assert!(reports[0]["karamata_certificate"]["holds"].as_bool().unwrap());
}

#[test]
fn verify_random_tables_is_reproducible() {
    let args = ["verify", "--class", "dictator:j=1", "--n", "3", "--p-den", "4", "--random-tables", "3", "--seed", "7", "--format", "csv"];
    let a = mi(&args);
    let b = mi(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("table:")).count(), 9);
}

#[test]
fn karamata_certificate_and_sums() {
    let dir = tempfile::tempdir().unwrap();
    let sums = dir.path().join("sums.csv");
    let out = mi(&["karamata", "--n", "3", "--p", "1/8", "--dump-sums", sums.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
    let csv = fs::read_to_string(&sums).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "k,SL_num,SL_den,SR_num,SR_den,ok");
    assert_eq!(csv.lines().count(), 1 + 8 * 7);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(csv.lines().last().unwrap().starts_with("56,7,1,7,1,"));
}

#[test]
fn exhaustive_and_sweep() {
    let out = mi(&["exhaustive", "--n", "3", "--p-den", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[0]["num_functions_scanned"], 256);

    let out = mi(&["sweep", "--function", "dictator:j=1", "--n", "3", "--p-den", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("p,mi_bits,bound_bits,margin_bits\n0,"));
}

#[test]
fn reduce_check() {
    let out = mi(&["reduce-check", "--n", "4", "--r", "1", "--p", "3/8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["ok"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mi(&["compute", "--n", "2", "--function", "nope", "--p", "1/4"]).status.code(), Some(2));
    assert_eq!(mi(&["compute", "--n", "2", "--function", "class1", "--p", "3/4"]).status.code(), Some(2));
    assert_eq!(mi(&["compute", "--n", "2", "--function", "class1"]).status.code(), Some(2));
    assert_eq!(mi(&["exhaustive", "--n", "5"]).status.code(), Some(2));
    assert_eq!(mi(&["reduce-check", "--n", "3", "--r", "3"]).status.code(), Some(2));
    assert_eq!(mi(&["frobnicate"]).status.code(), Some(2));
}
