use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn apncert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apncert")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// x^12 + x^11 + 0x3 x^5 + 0x7 over GF(2^8).
const POLY12: &str = r#"{"field": {"n": 8}, "coeffs": ["0x7", "0x0", "0x0", "0x0", "0x0", "0x3", "0x0", "0x0", "0x0", "0x0", "0x0", "0x1", "0x1"]}"#;

#[test]
fn verify_bounds_reports_thresholds() {
    let out = apncert(&["verify", "bounds", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let ids: Vec<&str> = v["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"bounds.n1_12") && ids.contains(&"bounds.n2_12"));
    assert_eq!(v["status"], "pass");
}

#[test]
fn verify_all_is_reproducible_across_thread_counts() {
    let a = apncert(&["verify", "all", "--seed", "42"]);
    let b = apncert(&["verify", "all", "--seed", "42"]);
    let c = Command::new(env!("CARGO_BIN_EXE_apncert"))
        .args(["verify", "all", "--seed", "42"])
        .env("APNCERT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["failed"], 0);
    // structure grid verdicts are present for every point
    let grid = v["claims"].as_array().unwrap().iter().filter(|c| c["id"].as_str().unwrap().starts_with("structure.grid")).count();
    assert_eq!(grid, 30);
}

#[test]
fn verify_requires_a_seed() {
    assert_eq!(apncert(&["verify", "all"]).status.code(), Some(2));
}

#[test]
fn certify_at_28() {
    let out = apncert(&["certify", "--m", "12", "--n", "28", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "certified");
    assert_eq!(v["root_count"], 10);
    assert_eq!(v["exploratory"], false);
    assert_eq!(v["morse_report"]["morse"], true);
    let first = v["beta_trial"].as_u64().unwrap();
    if first > 0 {
        let short = apncert(&["certify", "--m", "12", "--n", "28", "--seed", "7", "--budget", &first.to_string()]);
        assert_eq!(short.status.code(), Some(3));
        assert_eq!(json(&short)["status"], "inconclusive");
    }
}

#[test]
fn certify_from_file_and_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", POLY12);
    let out = apncert(&["certify", "--poly", &p, "--seed", "3"]);
    assert!(matches!(out.status.code(), Some(0) | Some(3)), "{out:?}");
    assert_eq!(json(&out)["schema_version"], 1);
    // inadmissible degree, missing n, mismatched m
    assert_eq!(apncert(&["certify", "--m", "16", "--n", "20", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(apncert(&["certify", "--m", "12", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(apncert(&["certify", "--poly", &p, "--m", "20", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn bounds_for_72_is_a_shape_report() {
    let out = apncert(&["bounds", "--m", "72"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["profile"]["r"], 3);
    assert_eq!(v["profile"]["ell"], 3);
    let v = json(&apncert(&["bounds", "--m", "12"]));
    assert_eq!((v["n1"].as_u64(), v["n2"].as_u64()), (Some(9), Some(28)));
    assert_eq!(v["d_omega"], "1920");
    let v = json(&apncert(&["bounds", "--list", "--max", "100"]));
    assert_eq!(v["degrees"].as_array().unwrap().len(), 9);
    assert_eq!(apncert(&["bounds", "--m", "13"]).status.code(), Some(2));
}

#[test]
fn malformed_polynomial_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\n  \"field\": {\"n\": 8},\n  \"coeffs\": [\"0x1\", 7]\n}\n");
    let out = apncert(&["lalpha", "--poly", &p, "--alpha", "0x2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("column"), "{err}");
    let p = write(dir.path(), "wide.json", r#"{"field": {"n": 4}, "coeffs": ["0x1f"]}"#);
    assert_eq!(apncert(&["du", "--poly", &p, "--exhaustive"]).status.code(), Some(2));
}

#[test]
fn lalpha_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", POLY12);
    let out = apncert(&["lalpha", "--poly", &p, "--alpha", "0x2", "--field", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let b = v["b"].as_array().unwrap();
    assert_eq!(b.len(), 6);
    // b0 = a1 alpha = 1 * 0x2
    assert_eq!(b[0], "0x2");
    assert_eq!(apncert(&["lalpha", "--poly", &p, "--alpha", "0x0"]).status.code(), Some(2));
    assert_eq!(apncert(&["lalpha", "--poly", &p, "--alpha", "0x2", "--field", "9"]).status.code(), Some(2));
}

#[test]
fn du_and_morse_scan() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", r#"{"field": {"n": 3}, "coeffs": ["0x0", "0x0", "0x0", "0x1"]}"#);
    let v = json(&apncert(&["du", "--poly", &cube, "--exhaustive"]));
    assert_eq!(v["delta"], 2);
    assert_eq!(v["exact"], true);
    let p = write(dir.path(), "f.json", POLY12);
    let out = apncert(&["du", "--poly", &p, "--samples", "200", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["delta"].as_u64().unwrap() <= 10);
    assert_eq!(apncert(&["du", "--poly", &p]).status.code(), Some(2));

    let out = apncert(&["morse-scan", "--poly", &p, "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["counts"]["checked"], 255);
    assert!(v["violations"].as_array().unwrap().is_empty());
    let a = apncert(&["morse-scan", "--poly", &p, "--samples", "50", "--seed", "9"]);
    let b = apncert(&["morse-scan", "--poly", &p, "--samples", "50", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(apncert(&["morse-scan", "--poly", &p, "--samples", "50"]).status.code(), Some(2));
}

#[test]
fn structure_commands() {
    let v = json(&apncert(&["structure", "--r", "3", "--ell", "3"]));
    assert!(!v["vanishing_pairs"]["pairs"].as_array().unwrap().is_empty());
    let out = apncert(&["structure", "--grid", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    assert_eq!(v["all_ok"], true);
}

#[test]
fn ddt_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", POLY12);
    let csv_path = dir.path().join("ddt.csv");
    let out = apncert(&["ddt", "--poly", &p, "--out", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"], 255);
    let mut rd = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rd.headers().unwrap(), vec!["alpha_hex", "beta_hex", "count"]);
    let mut per_alpha = std::collections::BTreeMap::<String, u64>::new();
    let mut entries = 0;
    for rec in rd.records() {
        let rec = rec.unwrap();
        let c: u64 = rec[2].parse().unwrap();
        assert!(c > 0 && c % 2 == 0 && c <= 10);
        *per_alpha.entry(rec[0].to_string()).or_default() += c;
        entries += 1;
    }
    assert_eq!(v["entries"], entries);
    assert_eq!(per_alpha.len(), 255);
    assert!(per_alpha.values().all(|&s| s == 256));

    // a single row matches the same row of the full table
    let one = dir.path().join("row.csv");
    apncert(&["ddt", "--poly", &p, "--alpha", "0x5", "--out", one.to_str().unwrap()]);
    let text = std::fs::read_to_string(&one).unwrap();
    let full = std::fs::read_to_string(&csv_path).unwrap();
    for line in text.lines().skip(1) {
        assert!(full.lines().any(|l| l == line), "{line}");
    }
}
