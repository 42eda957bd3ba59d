use std::process::{Command, Output};

use serde_json::Value;

fn fqrack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqrack")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn field_description() {
    let out = fqrack(&["field", "--q", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["p"].as_u64(), v["m"].as_u64()), (Some(3), Some(2)));
    let same = fqrack(&["field", "--p", "3", "--m", "2"]);
    assert_eq!(out.stdout, same.stdout);
    assert_eq!(fqrack(&["field", "--q", "6"]).status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let count = |n: &str, q: &str| {
        let out = fqrack(&["enumerate-unipotent", "--family", "sl", "--n", n, "--q", q]);
        assert_eq!(out.status.code(), Some(0));
        json(&out)["classes"].as_array().unwrap().len()
    };
    // Regular type splits into gcd(n, q - 1) labels.
    assert_eq!(count("2", "7"), 3);
    assert_eq!(count("3", "2"), 3);
    assert_eq!(count("4", "3"), 6);
    let big = fqrack(&["enumerate-unipotent", "--n", "2", "--q", "11"]);
    assert_eq!(big.status.code(), Some(2));
}

#[test]
fn classify_verdicts_and_caps() {
    let out = fqrack(&["classify", "--n", "3", "--q", "2", "--partition", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"]["tag"], "CthulhuEvidence");
    let out = fqrack(&["classify", "--n", "4", "--q", "2", "--partition", "2,2"]);
    let v = json(&out);
    assert_eq!(v["verdict"]["tag"], "TypeD");
    assert!(v["verdict"]["witness"]["type_d"]["r"].as_str().unwrap().contains(';'));
    let capped = fqrack(&["classify", "--n", "3", "--q", "2", "--partition", "3", "--class-cap", "10"]);
    assert_eq!(capped.status.code(), Some(2));
    let bad = fqrack(&["classify", "--n", "2", "--q", "3", "--element", "1,1;0,2"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn table_is_deterministic_and_reports_skips() {
    let args = ["table", "--ns", "2,3", "--qs", "2,3", "--seed", "5"];
    let a = fqrack(&args);
    let b = fqrack(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 5);
    assert!(v["timing_ms"].is_null());
    assert_eq!(v["summary"]["disagree"], 0);
    let md = fqrack(&["table", "--ns", "3", "--qs", "2", "--class-cap", "30", "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.contains("SKIPPED") && text.contains("cap of 30"));
}

#[test]
fn verify_single_family() {
    let out = fqrack(&["verify-paper", "--lemma", "sl3-4-order108"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lemmas"].as_array().unwrap().len(), 1);
    assert!(v["oracle"].is_null());
    let out = fqrack(&["verify-paper", "--lemma", "two-big-blocks-even", "--q", "2", "--partition", "4,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fqrack(&["verify-paper", "--lemma", "no-such-family"]).status.code(), Some(3));
    assert_eq!(fqrack(&["verify-paper", "--lemma", "gl2", "--q", "3"]).status.code(), Some(3));
}

#[test]
fn little_triangle_and_output_file() {
    let dir = std::env::temp_dir().join(format!("fqrack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tri.json");
    let out = fqrack(&[
        "little-triangle",
        "--n",
        "2",
        "--q",
        "7",
        "--element",
        "0,1;6,0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["class_size"], 21);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(fqrack(&["classify", "--n", "2"]).status.code(), Some(3));
    assert_eq!(fqrack(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(fqrack(&["--help"]).status.code(), Some(0));
}
