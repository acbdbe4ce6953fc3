use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn moufang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moufang"))
        .args(args)
        .env_remove("MOUFANG_BUDGET")
        .output()
        .expect("binary runs")
}

fn construct(dir: &Path, spec: &str, name: &str) -> PathBuf {
    let path = dir.join(name);
    let out = moufang(&["construct", spec, "-o", path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn strip_timing(jsonl: &str) -> Vec<serde_json::Value> {
    jsonl
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("timing_ms");
            v
        })
        .collect()
}

#[test]
fn construct_to_stdout() {
    let out = moufang(&["construct", "cyclic(3)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3\n0 1 2\n1 2 0\n2 0 1\n");
    let bad = moufang(&["construct", "cyclic(x)"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn validate_good_and_corrupted() {
    let dir = TempDir::new().unwrap();
    let z3 = construct(dir.path(), "cyclic(3)", "z3.txt");
    let out = moufang(&["validate", z3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("order 3"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0 1 2\n1 2 0\n2 0 0\n").unwrap();
    let out = moufang(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Latin"), "{err}");

    let missing = moufang(&["validate", dir.path().join("nope.txt").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn analyze_z3() {
    let dir = TempDir::new().unwrap();
    let z3 = construct(dir.path(), "cyclic(3)", "z3.txt");
    let out = moufang(&["analyze", z3.to_str().unwrap(), "--rank", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["nilpotency_class"], 1);
    assert_eq!(v["special_rank"], 1);
}

#[test]
fn analyze_and_multgroup_cml81() {
    let dir = TempDir::new().unwrap();
    let l = construct(dir.path(), "cml81", "l.txt");
    let out = moufang(&["analyze", l.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["associative"], false);
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["nilpotency_class"], 2);
    assert_eq!(v["min_generators"], 3);
    assert_eq!(v["exponent"], 3);

    let out = moufang(&["multgroup", l.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["transitive"], true);
    assert_eq!(v["order_is_degree_times_inner"], true);
    assert_eq!(v["is_3_group"], true);
}

#[test]
fn centralizer_command() {
    let dir = TempDir::new().unwrap();
    let l = construct(dir.path(), "cml81", "l.txt");
    let out = moufang(&[
        "centralizer",
        l.to_str().unwrap(),
        "--set",
        "27,9",
        "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["centralizer_order"], 27);
    let out = moufang(&[
        "centralizer",
        l.to_str().unwrap(),
        "--subloop",
        "27",
        "--set",
        "27,9",
    ]);
    assert!(stdout(&out).contains("|Z_H(M)| = 3"));
    let out = moufang(&["centralizer", l.to_str().unwrap(), "--set", "81"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let l = construct(dir.path(), "product(cyclic(3), ea3(2))", "l.txt");
    let path = l.to_str().unwrap();
    let a = moufang(&["verify", path, "--json", "--rank", "--seed", "7"]);
    let b = moufang(&["verify", path, "--json", "--rank", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (strip_timing(&stdout(&a)), strip_timing(&stdout(&b)));
    assert_eq!(a, b);
    let names: Vec<&str> = a.iter().map(|v| v["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"lemma1.bruck-slaby"));
    assert!(names.contains(&"eq2.associator-expansion"));
    for v in &a {
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["counterexample", "mode", "name", "status"]);
    }
}

#[test]
fn verify_sampling_and_budget() {
    let dir = TempDir::new().unwrap();
    let l = construct(dir.path(), "ea3(2)", "l.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_moufang"))
        .args([
            "verify",
            l.to_str().unwrap(),
            "--json",
            "--seed",
            "5",
            "--samples",
            "100",
        ])
        .env("MOUFANG_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let reports = strip_timing(&stdout(&out));
    let eq2 = reports
        .iter()
        .find(|v| v["name"] == "eq2.associator-expansion")
        .unwrap();
    assert_eq!(
        eq2["mode"],
        serde_json::json!({"sampled": {"seed": 5, "count": 100}})
    );

    // The lattice refuses loops above 243 elements: a budget skip, exit 3.
    let big = construct(dir.path(), "product(cml81, cyclic(4))", "big.txt");
    let out = moufang(&["analyze", big.to_str().unwrap(), "--rank"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_non_cml_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c6.txt");
    std::fs::write(
        &path,
        "6\n0 1 2 3 4 5\n1 0 3 2 5 4\n2 3 4 5 0 1\n3 2 5 4 1 0\n4 5 0 1 3 2\n5 4 1 0 2 3\n",
    )
    .unwrap();
    let out = moufang(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let reports = strip_timing(&stdout(&out));
    let def = reports
        .iter()
        .find(|v| v["name"] == "def.cml-identity")
        .unwrap();
    assert_eq!(def["status"], "fail");
    assert_eq!(def["counterexample"].as_array().unwrap().len(), 3);
    let human = moufang(&["verify", path.to_str().unwrap()]);
    assert!(stdout(&human).contains("FAIL"));
}
