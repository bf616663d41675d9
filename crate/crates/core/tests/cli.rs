use std::path::{Path, PathBuf};

use hypermod::cli::{self, EXIT_CAPACITY, EXIT_INVALID, EXIT_OK, EXIT_THEOREM_FAILURE, EXIT_USAGE};
use hypermod::fixtures::files;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hypermod"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn check_reports_valid_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [("z4.hs", files::Z4), ("z6.hs", files::Z6), ("v4.hs", files::V4)] {
        let p = write(dir.path(), name, text);
        let (code, out, _) = run(&["check", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
    }
}

#[test]
fn k2_warns_but_checks_clean() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "k2.hs", files::K2);
    let (code, out, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(format!("{out}{err}").contains("WARN"));
}

#[test]
fn broken_table_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.hs", "this is not a structure\n");
    let (code, _, _) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    let (code, out, _) = run(&["--format", "json", "check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["exit_code"], EXIT_INVALID);
}

#[test]
fn missing_file_and_bad_usage() {
    // unreadable input is a usage error, not an invalid structure
    assert_eq!(run(&["check", "/nonexistent/file.hs"]).0, EXIT_USAGE);
    assert_eq!(run(&["enumerate"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z4.hs", files::Z4);
    // exactly one of --ideals / --submodules
    assert_eq!(run(&["enumerate", p.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", p.to_str().unwrap(), "--theorem", "X9"]).0, EXIT_USAGE);
}

#[test]
fn enumerate_z4_lattices() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z4.hs", files::Z4);
    let (code, out, _) = run(&["--format", "json", "enumerate", p.to_str().unwrap(), "--ideals"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["hyperideals"][1], serde_json::json!(["0", "2"]));
    let (code, out, _) = run(&["enumerate", p.to_str().unwrap(), "--submodules"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("{0, 2}"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = write(dir.path(), "z4.hs", files::Z4);
    let v4 = write(dir.path(), "v4.hs", files::V4);
    let (code, out, _) = run(&["--format", "json", "verify", z4.to_str().unwrap(), "--theorem", "all"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 23);
    let (code, out, _) = run(&["--format", "json", "verify", v4.to_str().unwrap(), "--theorem", "T5.3"]);
    assert_eq!(code, EXIT_THEOREM_FAILURE);
    assert_eq!(json(&out)["verdicts"][0]["pass"], false);
}

#[test]
fn classify_runs() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z6.hs", files::Z6);
    let (code, out, _) = run(&["--format", "json", "classify", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(json(&out)["schema"], 1);
}

#[test]
fn bound_below_carrier_is_capacity() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "z6.hs", files::Z6);
    let (code, _, _) = run(&["--bound", "2", "enumerate", p.to_str().unwrap(), "--ideals"]);
    assert_eq!(code, EXIT_CAPACITY);
}

#[test]
fn search_small_and_random() {
    let (code, out, _) = run(&["--format", "json", "search", "--max-size", "2", "--target", "L3.2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["hits"].as_array().unwrap().len(), 0);
    let args = ["--format", "json", "search", "--max-size", "3", "--target", "is_multiplication", "--random", "--seed", "7", "--count", "20"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
}
