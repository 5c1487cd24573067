use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/{name}.json"))
}

fn blocktool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocktool"))
        .args(args)
        .env_remove("BLOCKTOOL_CACHE")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_all_c6() {
    let c6 = corpus("C6");
    let out = blocktool(&["verify-all", path(&c6), "-p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schemaVersion"], 1);
    let e = &r["result"]["entries"][0];
    assert_eq!(e["blocks"], 3);
    assert_eq!(e["nontrivialOrbits"], 1);
    assert_eq!(e["verdict"], "pass");
}

#[test]
fn isotypy_c6_block_one() {
    let c6 = corpus("C6");
    let out = blocktool(&["isotypy", path(&c6), "-p", "2", "--block", "1", "--power", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["signsPositive"], true);
    assert_eq!(r["defectGroup"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Pass"));
}

#[test]
fn coprime_prime_warns() {
    let s3 = corpus("S3");
    let out = blocktool(&["blocks", path(&s3), "-p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let r = json(&out);
    let blocks = r["result"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 3);
    assert!(blocks.iter().all(|b| b["defect"] == 0));
}

#[test]
fn input_errors_exit_three() {
    let s3 = corpus("S3");
    assert_eq!(blocktool(&["blocks", "missing.json", "-p", "2"]).status.code(), Some(3));
    assert_eq!(blocktool(&["blocks", path(&s3), "-p", "4"]).status.code(), Some(3));
    assert_eq!(
        blocktool(&["isotypy", path(&s3), "-p", "3", "--block", "9"]).status.code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "x", "degree": 3, "generators": [[1, 1, 2]]}"#).unwrap();
    assert_eq!(blocktool(&["classes", path(&bad)]).status.code(), Some(3));
}

#[test]
fn small_subcommands() {
    let a4 = corpus("A4");
    let r = json(&blocktool(&["classes", path(&a4)]));
    assert_eq!(r["result"]["classes"].as_array().unwrap().len(), 4);
    let r = json(&blocktool(&["chartable", path(&a4)]));
    assert_eq!(r["result"]["degrees"], serde_json::json!([1, 1, 1, 3]));
    let out = blocktool(&["fpform", path(&a4), "-p", "2", "--block", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert_eq!(r["centerDimension"], 4);
    assert_eq!(r["fpForm"]["dimension"], 4);
    assert_eq!(r["brauerFeit"]["m"], "5");
}

#[test]
fn recheck_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = corpus("S4");
    let cert = dir.path().join("cert.json");
    let out = blocktool(&["isotypy", path(&s4), "-p", "3", "--block", "0", "--out", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let ok = blocktool(&["recheck", path(&s4), cert.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["result"]["globalIsometry"]["signs"][0] = (-1).into();
    let forged = dir.path().join("forged.json");
    std::fs::write(&forged, v.to_string()).unwrap();
    let bad = blocktool(&["recheck", path(&s4), forged.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("mismatch"));
}

#[test]
fn verify_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let groups = ["S4", "Q8", "C7xC3"].map(corpus);
    let run = |out: &str, jobs: &str, cache: Option<&PathBuf>| -> Vec<u8> {
        let file = dir.path().join(out);
        let mut args: Vec<&str> = vec!["verify-all"];
        args.extend(groups.iter().map(path));
        args.extend(["--jobs", jobs, "--out", file.to_str().unwrap()]);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_blocktool"));
        cmd.args(&args).env_remove("BLOCKTOOL_CACHE");
        if let Some(c) = cache {
            cmd.env("BLOCKTOOL_CACHE", c);
        }
        assert_eq!(cmd.output().unwrap().status.code(), Some(0));
        std::fs::read(file).unwrap()
    };
    let cold = run("cold.json", "1", Some(&cache));
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = run("warm.json", "4", Some(&cache));
    let none = run("none.json", "2", None);
    assert_eq!(cold, warm);
    assert_eq!(cold, none);
}
