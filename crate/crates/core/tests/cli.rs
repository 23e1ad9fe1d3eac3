use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dickson-do"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn text(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--out", "text"];
    full.extend_from_slice(args);
    let (code, s) = run(&full);
    (code, s.trim().to_string())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, s) = run(args);
    (code, serde_json::from_str(&s).expect("valid JSON"))
}

#[test]
fn dickson_display() {
    assert_eq!(text(&["dickson", "--k", "5", "--m", "2", "--d", "2", "--p", "3", "--a", "1"]).1, "x^10 + x^2");
    assert_eq!(text(&["dickson", "--k", "0", "--m", "3"]).1, "-1");
    assert_eq!(text(&["dickson", "k=5,m=2,d=2,p=3,a=1"]).1, "x^10 + x^2");
    let (_, v) = json(&["dickson", "--k", "10", "--m", "4"]);
    assert_eq!(v["results"]["coefficients"][1]["coeff"], "-6");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(run(&["dickson", "k=x"]).0, 1);
}

#[test]
fn classify_exit_codes() {
    let (code, out) = text(&["classify", "--p", "3", "--kmax", "20", "--dmax", "50", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0 mismatches"));
    let (code, v) = json(&["classify", "--p", "7", "--kmax", "20", "--dmax", "50", "--m", "all", "--rows"]);
    assert_eq!(code, 0);
    let rows = v["results"]["rows"].as_array().unwrap();
    for r in rows.iter().filter(|r| r["is_do"] == true && r["m"].as_u64().unwrap() >= 5) {
        assert!(r["k"].as_u64().unwrap() <= 2);
    }
    assert_eq!(run(&["classify", "--p", "2"]).0, 1);
}

#[test]
fn planar_sweeps() {
    let (_, v) = json(&["planar", "--field", "5^1", "--poly", "x^10+2*a*x^6+a^2*x^2", "--sweep-a"]);
    assert_eq!(v["results"]["planar_set"], serde_json::json!(["(1)", "(2)", "(3)"]));
    let (_, v) = json(&["planar", "--field", "3^3", "--poly", "x^10+a^2*x^2", "--sweep-a"]);
    assert_eq!(v["results"]["planar_count"], 0);
    let (_, v) = json(&["planar", "--field", "3^2", "--poly", "x^2"]);
    assert_eq!(v["results"]["planar"], true);
}

#[test]
fn reproduce_reports_discrepancy() {
    let (code, v) = json(&["planar", "--reproduce", "planar-list", "--max-e", "3"]);
    let failed: Vec<&str> = v["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["x10-f81"]);
    assert_eq!(code, 2);
}

#[test]
fn weil_commands() {
    assert_eq!(text(&["weil", "min-e", "--p", "3", "--deg", "8", "--boundary", "16"]).1, "7");
    assert_eq!(text(&["weil", "interval", "--q", "81", "--deg", "2"]).1, "[80, 82]");
    let (_, v) = json(&["weil", "count", "--field", "3^2", "--h", "x^2+y^2-(1)"]);
    let n = v["results"]["measured"].as_u64().unwrap();
    assert!((8..=10).contains(&n));
}

#[test]
fn appendix_commands() {
    let (code, v) = json(&["appendix", "--p", "3", "--verify", "--nmax", "2"]);
    assert_eq!(code, 0);
    assert!(v["results"]["verification"]["failed"].as_array().unwrap().is_empty());
    let (_, v) = json(&["appendix", "--p", "13"]);
    assert_eq!(v["results"]["families"].as_array().unwrap().len(), 1);
}

#[test]
fn deterministic_output() {
    let strip = |mut v: Value| {
        v["runtime_ms"] = Value::Null;
        v
    };
    let args = ["classify", "--p", "5", "--kmax", "10", "--dmax", "30", "--rows"];
    assert_eq!(strip(json(&args).1), strip(json(&args).1));
}
