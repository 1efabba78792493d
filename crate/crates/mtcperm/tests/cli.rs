use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mtcperm"));
    c.env_remove("MTCPERM_TOL");
    c
}

fn diagram(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("diagrams").join(name).display().to_string()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).display().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("mtcperm-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn trivial_iso_is_exact() {
    let o = bin().args(["verify", "--category", &data("trivial.json"), "--suite", "iso", "--format", "json"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    for c in v["outcomes"][0]["report"]["checks"].as_array().unwrap() {
        assert!(c["max_residual"].as_f64().unwrap() < 1e-14, "{c}");
    }
}

#[test]
fn broken_fixture_names_the_first_failure() {
    let o = bin().args(["verify", "--category", &data("broken_pentagon.json"), "--suite", "consistency"]).output().unwrap();
    assert_eq!(code(&o), 1);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("first failure: broken_pentagon/consistency/pentagon"), "{out}");
}

#[test]
fn load_errors_exit_two() {
    let o = bin().args(["verify", "--category", "/nonexistent/x.json"]).output().unwrap();
    assert_eq!(code(&o), 2);
    let bad = tmp("bad.json", "{\"name\": 1}");
    let o = bin().args(["verify", "--category", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 2);
    let o = bin().args(["verify", "--category", "fibonacci", "--jobs", "0"]).output().unwrap();
    assert_eq!(code(&o), 2);
    let o = bin().args(["verify", "--category", "fibonacci", "--tol", "-1"]).output().unwrap();
    assert_eq!(code(&o), 2);
    let o = bin().args(["verify", "--category", "fibonacci"]).env("MTCPERM_TOL", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn tolerance_from_the_environment() {
    // a tolerance below round-off makes the exact identities fail
    let o = bin()
        .args(["verify", "--category", "fibonacci", "--suite", "consistency"])
        .env("MTCPERM_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = bin().args(["verify", "--category", "fibonacci", "--suite", "consistency"]).output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn report_goes_to_out_file() {
    let out = std::env::temp_dir().join(format!("mtcperm-cli-{}-report.json", std::process::id()));
    let o = bin()
        .args(["verify", "--category", "z2", "--suite", "dualbases", "--format", "json", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["outcomes"][0]["suite"], "dualbases");
}

#[test]
fn non_modular_suites_are_skipped() {
    let o = bin()
        .args(["verify", "--category", "z2_symmetric", "--suite", "iso", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcomes"][0]["status"], "skipped");
}

#[test]
fn rank_cap_is_enforced() {
    let o = bin().args(["verify", "--category", "ising", "--suite", "algebra", "--rank-cap", "8"]).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("rank cap"));
}

#[test]
fn eval_snake_and_loop() {
    let o = bin().args(["eval", "--category", "fibonacci", &diagram("snake.dsl")]).output().unwrap();
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("1x1") && out.contains("1.000000"), "{out}");
    let o = bin().args(["eval", "--category", "fibonacci", &diagram("loop.dsl")]).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stdout).contains("1.618034"));
}

#[test]
fn eval_errors() {
    let bad = tmp("bad.dsl", "vertex(bad\n");
    let o = bin().args(["eval", "--category", "fibonacci", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains(":1:11:"));
    let mism = tmp("mism.dsl", "@source tau\nid(tau)\nbraid+\n");
    let o = bin().args(["eval", "--category", "fibonacci", mism.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("slice 1 (line 3)"));
    let o = bin()
        .args(["eval", "--category", "fibonacci", &diagram("snake.dsl"), "--target", "tau tau"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn eval_with_source_override_on_ising() {
    let o = bin()
        .args(["eval", "--category", "ising", &diagram("reidemeister2.dsl"), "--source", "sigma psi", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["source"], "σ ψ");
    let b = &v["blocks"][0];
    assert!((b["re"][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn fmt_accepts_the_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("diagrams");
    let files: Vec<String> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path().display().to_string()).collect();
    let o = bin().arg("fmt").args(&files).output().unwrap();
    assert_eq!(code(&o), 0);
}
