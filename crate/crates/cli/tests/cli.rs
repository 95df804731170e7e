use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbp"))
        .args(args)
        .env_remove("BLASCHKE_SAMPLES")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = fbp(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn expand_polynomial() {
    let v = ok_json(&["expand", "--func", "poly:0,0,1"]);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 32);
    assert_eq!(v["residual_sup_norms"].as_array().unwrap().len(), 32);
    assert_eq!(v["meta"]["sample_count"], 2048);
    assert!(v["remainder_identity_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn expand_recovers_product() {
    let v = ok_json(&[
        "expand",
        "--func",
        "blaschke:0.5",
        "--seq",
        "explicit:[0.5,0.7]",
        "--nterms",
        "2",
    ]);
    let c0 = complex(&v["coefficients"][0]);
    let c1 = complex(&v["coefficients"][1]);
    assert!(c0.0.abs() < 1e-10 && c0.1.abs() < 1e-10);
    assert!((c1.0 - 1.0).abs() < 1e-10 && c1.1.abs() < 1e-10);
}

#[test]
fn usage_errors_exit_2() {
    let out = fbp(&["expand", "--func", "poly:1", "--seq", "geometric"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fbp(&["expand", "--func", "sine:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--func"));
    let out = fbp(&["convergence", "--func", "poly:1", "--bound", "kernel"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fbp(&["tmw", "witness", "--kmax", "4", "--seq", "explicit:[0.1,0.2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convergence_kernel_bound() {
    let out = fbp(&[
        "convergence",
        "--func",
        "kernel:0.5",
        "--nterms",
        "12",
        "--norms",
        "sup,hardy:1",
        "--bound",
        "kernel",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(header, ["n", "sup", "hardy:1", "bound"]);
    assert_eq!(rows.len(), 13);
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row[0], n as f64);
        assert!(row[2] <= row[1] + 1e-10);
        assert!(row[3] >= row[1] * (1.0 - 1e-9));
    }
}

#[test]
fn convergence_terminates_on_span() {
    let out = fbp(&[
        "convergence",
        "--func",
        "blaschke:0.5;0.6667;0.75",
        "--seq",
        "explicit:[0.5,0.6667,0.75,0.8,0.8333]",
        "--nterms",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = csv(&String::from_utf8(out.stdout).unwrap());
    assert!(rows[..4].iter().all(|r| (r[1] - 1.0).abs() < 1e-10));
    assert!(rows[4..].iter().all(|r| r[1] <= 1e-10));
}

#[test]
fn tmw_diagnostics() {
    let f = ok_json(&["tmw", "functional", "--n", "1", "--seq", "explicit:[0,0.5]"]);
    assert!((f["quadrature"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((f["closed_form"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let g = ok_json(&["tmw", "gram", "--k", "8"]);
    assert!(g["max_off_diagonal"].as_f64().unwrap() <= 1e-8);
    assert!(g["max_identity_deviation"].as_f64().unwrap() <= 1e-8);

    let w = ok_json(&["tmw", "witness", "--kmax", "16"]);
    assert_eq!(w["strictly_increasing"], true);
    let values: Vec<f64> = w["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(values.windows(2).all(|p| p[1] > p[0]));
}

#[test]
fn numerical_failures_exit_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_fbp"))
        .args(["expand", "--func", "kernel:0.9"])
        .env("BLASCHKE_SAMPLES", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = fbp(&["tmw", "witness", "--kmax", "32", "--samples", "2048"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selftest_modes() {
    let out = fbp(&["selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = fbp(&["selftest", "--samples", "16"]);
    assert_ne!(out.status.code(), Some(0));
    let out = fbp(&["selftest", "--filter", "toeplitz"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 0);
    assert!(text.lines().all(|l| l.contains("toeplitz")));
}

fn run_to(dir: &Path, name: &str) -> Vec<u8> {
    let path = dir.join(name);
    let out = fbp(&[
        "expand",
        "--func",
        "kernel:0.3+0.4i",
        "--nterms",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    std::fs::read(path).unwrap()
}

#[test]
fn file_output_is_deterministic_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(dir.path(), "a.json");
    let b = run_to(dir.path(), "b.json");
    assert_eq!(a, b);
    let meta: Value = serde_json::from_slice(&std::fs::read(dir.path().join("a.json.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "expand");
    assert_eq!(meta["sample_count"], 2048);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn samples_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fbp"))
        .args(["expand", "--func", "poly:1,2", "--nterms", "4"])
        .env("BLASCHKE_SAMPLES", "512")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meta"]["sample_count"], 512);
}
