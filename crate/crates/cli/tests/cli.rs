// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qbool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbool")).args(args).output().expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_ensemble(dir: &Path, name: &str, family: &str, n: &str) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let out = qbool(&["ensemble", "--family", family, "--n", n, "--out", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn bh_suite_is_report_only() {
    let out = qbool(&["verify", "--suite", "bh", "--trials", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,n,seed,lhs,rhs,implied_constant"));
    assert_eq!(lines.count(), 60);
}

#[test]
fn poincare_suite_ratios_below_one() {
    let out = qbool(&["verify", "--suite", "poincare", "--n", "2..5", "--trials", "200", "--seed", "7", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        assert_eq!(&rec[2], "7");
        if !rec[5].is_empty() {
            assert!(rec[5].parse::<f64>().unwrap() <= 1.0);
        }
        rows += 1;
    }
    assert_eq!(rows, 200);
}

#[test]
fn junta_of_dictator_keeps_one_qubit() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_ensemble(dir.path(), "dictator6.json", "dictator", "6");
    let out = qbool(&["junta", "--input", &input, "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["k_actual"], 1);
    assert_eq!(r["kept"], serde_json::json!([0]));
    assert_eq!(r["T"], serde_json::json!([1, 2, 3, 4, 5]));
}

#[test]
fn boolean_junta_of_dictator() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_ensemble(dir.path(), "dictator3.json", "dictator", "3");
    let out = qbool(&["junta", "--input", &input, "--eps", "0.5", "--boolean"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["support_ok"], true);
    assert_eq!(r["C"]["coeffs"][0]["s"], "300");
}

#[test]
fn learn_recovers_parity() {
    let dir = tempfile::tempdir().unwrap();
    let hidden = write_ensemble(dir.path(), "parity4.json", "parity", "4");
    let out = qbool(&["learn", "--hidden", &hidden, "--gamma", "0.4", "--delta", "0.1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["success"], true);
    let coeffs = r["recovered"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0]["s"], "3333");
    assert!((coeffs[0]["re"].as_f64().unwrap() - 1.0).abs() < 0.2);
}

#[test]
fn identical_seeds_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let cfg = dir.path().join("run.json");
    let (a, b, cfg) = (a.to_str().unwrap(), b.to_str().unwrap(), cfg.to_str().unwrap());
    let first = qbool(&["--seed", "11", "verify", "--suite", "friedgut", "--n", "2..3", "--trials", "10", "--out", a, "--save-config", cfg]);
    assert_eq!(first.status.code(), Some(0));
    let replay = qbool(&["--config", cfg, "--out", b]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    let meta: Value = serde_json::from_slice(&std::fs::read(format!("{a}.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["asserted_failures"], 0);
}

#[test]
fn weighted_exit_reflects_asserted_checks() {
    let out = qbool(&["weighted", "--omega", "0.7", "--n", "1", "--samples", "4"]);
    let r = &json_lines(&out)[0];
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["asserted"] == true && c["satisfied"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["intertwining"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn weighted_accepts_full_matrix() {
    let out = qbool(&["weighted", "--omega", "[[0.6,[0.1,0.1]],[[0.1,-0.1],0.4]]", "--n", "1", "--samples", "3"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["n"], 1);
    assert!(r["condition_number"].as_f64().unwrap() > 1.0);
}

#[test]
fn malformed_operator_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "coeffs": [{"s": "3", "re": 1.0, "im": 0.0}]}"#).unwrap();
    let out = qbool(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_reports_profile_then_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_ensemble(dir.path(), "majority3.json", "majority", "3");
    let out = qbool(&["analyze", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines[0]["kind"], "profile");
    assert_eq!(lines[0]["quantum_boolean"], true);
    let names: Vec<&str> = lines[1..].iter().map(|l| l["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["poincare_l1", "strong_poincare_l1", "talagrand_l1", "kkl_max_influence", "isoperimetry_l1"]);
}

#[test]
fn dynamics_preserves_variance() {
    let out = qbool(&["dynamics", "--n", "3", "--times", "0,0.5,1"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    for l in &lines {
        assert_eq!(l["variance_preserved"], true);
        assert!((l["variance"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
}
