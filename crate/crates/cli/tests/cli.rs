// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn triwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triwit")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_field(line: &str, key: &str) -> f64 {
    line.strip_prefix(key).unwrap().trim().parse().unwrap()
}

#[test]
fn state_kay_reports_ppt() {
    let out = triwit(&["state", "kay", "--a", "2", "--ppt"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ppt: [true, true, true]"));
}

#[test]
fn state_kye_eigs_has_zero_minimum() {
    let out = triwit(&["state", "kye", "--b", "1", "--c", "1", "--eigs", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["min_eigenvalue"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 8);
}

#[test]
fn invalid_state_parameters_exit_two() {
    let out = triwit(&["state", "kay", "--a", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a must be >= 2"));
    assert_eq!(triwit(&["state", "kye", "--b", "0.5", "--c", "0.5"]).status.code(), Some(2));
}

#[test]
fn eval_w1_on_kay() {
    let out = triwit(&["eval", "--witness", "W1", "--state", "kay:a=2.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("expectation:")).unwrap();
    let value = parse_field(line, "expectation:");
    let closed = 1.0 - (2.0 * 2f64.sqrt() + 1.0) / 3.5;
    assert!((value - closed).abs() < 1e-12);
    assert!(text.contains("closed form:"));
    assert!(text.contains("detected: true"));
}

#[test]
fn eval_w2_on_kye() {
    let out = triwit(&["eval", "--witness", "W2", "--state", "kye:b=1,c=1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rec = &v[0];
    assert!((rec["expectation"].as_f64().unwrap() + (2f64.sqrt() - 1.0)).abs() < 1e-12);
    assert_eq!(rec["detected"], Value::Bool(true));
}

#[test]
fn eval_cross_pair_flag_follows_sign() {
    let out = triwit(&["eval", "--witness", "W2", "--state", "kay:a=2.5", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let e = v[0]["expectation"].as_f64().unwrap();
    assert_eq!(v[0]["detected"].as_bool().unwrap(), e < 0.0);
    assert!(v[0].get("closed_form").is_none());
}

#[test]
fn eval_errors() {
    assert_eq!(triwit(&["eval", "--witness", "W9", "--state", "kay:a=2.5"]).status.code(), Some(2));
    assert_eq!(triwit(&["eval", "--witness", "W1", "--state", "kay:b=2"]).status.code(), Some(2));
    assert_eq!(triwit(&["eval", "--witness", "W1", "--state", "ghz"]).status.code(), Some(2));
    assert!(triwit(&["eval", "--witness", "Wzyx-", "--state", "kye:b=2,c=2"]).status.success());
}

fn scan_to(dir: &Path, name: &str, extra: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut args = extra.to_vec();
    let p = path.to_str().unwrap().to_string();
    args.extend(["--out", &p]);
    let out = triwit(&args);
    let body = std::fs::read_to_string(&path).unwrap_or_default();
    (out, body)
}

#[test]
fn kay_scan_brackets_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let (out, body) =
        scan_to(dir.path(), "kay.csv", &["scan", "kay", "--a-min", "2", "--a-max", "3", "--steps", "1000", "--witness", "W1"]);
    assert!(out.status.success());
    let summary = stdout(&out);
    let bracket = summary.split("boundary in [").nth(1).unwrap().trim_end().trim_end_matches(']');
    let (lo, hi) = bracket.split_once(", ").unwrap();
    let (lo, hi): (f64, f64) = (lo.parse().unwrap(), hi.parse().unwrap());
    assert!(lo <= 2.8284271 && 2.8284271 <= hi);

    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "family,param_a,param_b,param_c,witness,expectation,detected,ppt_q1,ppt_q2,ppt_q3");
    assert_eq!(lines.count(), 1000);
}

#[test]
fn kye_scan_detects_everything() {
    let dir = tempfile::tempdir().unwrap();
    let (out, _) = scan_to(
        dir.path(),
        "kye.csv",
        &["scan", "kye", "--b-min", "0.25", "--b-max", "4", "--steps", "16", "--c", "inverse"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("16 detected (100.0%)"));
}

#[test]
fn kay_scan_beyond_threshold_detects_nothing() {
    let out = triwit(&["scan", "kay", "--a-min", "2.9", "--a-max", "3", "--steps", "10"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 detected (0.0%)"));
    let body = stdout(&out);
    assert_eq!(body.lines().count(), 11);
    assert!(body.lines().skip(1).all(|l| l.split(',').nth(6) == Some("false")));
}

#[test]
fn scan_errors() {
    assert_eq!(triwit(&["scan", "kay", "--a-min", "1", "--a-max", "3", "--steps", "10"]).status.code(), Some(2));
    assert_eq!(triwit(&["scan", "kay", "--a-min", "2", "--a-max", "3", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(
        triwit(&["scan", "kye", "--b-min", "0.25", "--b-max", "4", "--steps", "5", "--c", "1"]).status.code(),
        Some(2)
    );
    let out = triwit(&["scan", "kay", "--a-min", "2", "--a-max", "3", "--steps", "5", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_and_json_agree_and_scans_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["scan", "kye", "--b-min", "0.5", "--b-max", "3", "--steps", "25", "--c", "2"];
    let (_, csv) = scan_to(dir.path(), "a.csv", &base);
    let (_, csv_again) = scan_to(dir.path(), "b.csv", &base);
    assert_eq!(csv, csv_again);

    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let (_, json) = scan_to(dir.path(), "a.json", &json_args);
    let rows: Vec<Value> = serde_json::from_str(&json).unwrap();

    let csv_rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), csv_rows.len());
    for (row, fields) in rows.iter().zip(&csv_rows) {
        for (idx, key) in [(2, "param_b"), (3, "param_c"), (5, "expectation")] {
            let from_csv: f64 = fields[idx].parse().unwrap();
            assert_eq!(from_csv.to_bits(), row[key].as_f64().unwrap().to_bits(), "{key}");
        }
        assert_eq!(fields[1], "");
        assert!(row["param_a"].is_null());
        assert_eq!(fields[6], row["detected"].as_bool().unwrap().to_string());
    }
}

#[test]
fn certify_w1() {
    let out = triwit(&["certify", "--witness", "W1", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v[0]["max_angle_objective"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v[0]["pass"], Value::Bool(true));
}

#[test]
fn certify_all_passes() {
    let out = triwit(&["certify", "--witness", "all", "--format", "csv"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("true")));
}

#[test]
fn certify_coarse_grid_is_lower_bound() {
    let out = triwit(&["certify", "--witness", "W1", "--grid", "3", "--refine", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lower bound"));
    let max: f64 = text.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(max <= 1.0 + 1e-12);
}

#[test]
fn certify_rejects_tiny_grid() {
    assert_eq!(triwit(&["certify", "--grid", "2"]).status.code(), Some(2));
}
