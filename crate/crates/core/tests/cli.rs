use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reslie::workbench::report::strip_timing;
use serde_json::Value;

fn catalog(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reslie")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    (v, out.status.code().expect("exit code"))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_accepts_catalog_file() {
    let (v, code) = structured(&["validate", catalog("f2-heis.alg").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["valid"], Value::Bool(true));
    assert_eq!(v["inputs"][0]["dim"], 3);
}

#[test]
fn validate_rejects_broken_p_map() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "bad.alg",
        "restricted-lie-algebra v1\nfield 2\ndim 3\nbasis x y z\nbracket x y : 0 0 1\npmap z : 1 0 0\n",
    );
    let (v, code) = structured(&["validate", &path]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["valid"], Value::Bool(false));
    assert!(!v["results"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "bad.alg", "restricted-lie-algebra v1\nfield 2\ndim 2\nbasis x y\nbracket x q : 0 1\n");
    let (v, code) = structured(&["invariants", &path]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["line"], 5);
    assert!(v["results"]["column"].as_u64().unwrap() > 1);
}

#[test]
fn oversized_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "big.alg", "restricted-lie-algebra v1\nfield 2\ndim 65\n");
    let out = run(&["invariants", &path]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["verify", "--no-such-flag"]).status.code(), Some(2));
}

#[test]
fn invariants_of_heisenberg() {
    let (v, code) = structured(&["invariants", catalog("f2-heis.alg").to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = v["results"].to_string();
    assert!(text.contains("\"is_p_nilpotent\":true"), "{text}");
    assert_eq!(v["schema"], "reslie-report/1");
}

#[test]
fn decompose_abelian() {
    let (v, code) = structured(&["decompose", catalog("f2-ab-21.alg").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(v["results"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == Value::Bool(true)));
    assert!(v["results"]["decomposition"].to_string().contains("[2,1]"));
}

#[test]
fn compare_isomorphic_pair() {
    let a = catalog("f2-heis.alg");
    let b = catalog("f2-heis-xz.alg");
    let (v, code) = structured(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["candidate_violations"], 0);
}

#[test]
fn compare_field_mismatch_is_input_error() {
    let a = catalog("f2-heis.alg");
    let b = catalog("f3-heis.alg");
    assert_eq!(run(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["f2-heis.alg", "f2-heis-xz.alg", "f2-ab-21.alg", "f2-dim1-toral.alg"] {
        std::fs::copy(catalog(name), dir.path().join(name)).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let (first, code) = structured(&["verify", d, "--jobs", "1"]);
    assert_eq!(code, 0);
    let (second, _) = structured(&["verify", d, "--jobs", "4"]);
    assert_eq!(strip_timing(first.clone()), strip_timing(second));
    assert_eq!(first["summary"]["failures"], 0);

    let digests: Vec<&str> =
        first["inputs"].as_array().unwrap().iter().map(|i| i["sha256"].as_str().unwrap()).collect();
    let mut sorted = digests.clone();
    sorted.sort();
    assert_eq!(digests, sorted);

    let out_path = dir.path().join("report.json");
    let out = run(&["verify", d, "--format", "structured", "--report-out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(strip_timing(written), strip_timing(first));
}

#[test]
fn text_format_is_readable() {
    let out = run(&["validate", catalog("f2-heis.alg").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("valid: true"), "{text}");
}
