use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn typen(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_typen")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, doc, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("typen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_record(name: &str, record: &Value) -> String {
    let path = scratch(name);
    std::fs::write(&path, record.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn construct_reports_first_length() {
    let (code, doc, _) = typen(&["construct", "--p", "5", "--c", "2", "--m", "1", "--n", "2", "--depth", "200"]);
    assert_eq!(code, 0);
    assert_eq!(doc["config"]["depth"], 200);
    assert_eq!(doc["report"]["ell"], 26);

    let (code, doc, _) = typen(&["construct", "--p", "5", "--c", "2", "--m", "2", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["config"]["depth"], 83);
    assert_eq!(doc["report"]["constituent_lengths"][1], 24);
}

#[test]
fn construct_rejects_bad_parameters() {
    assert_eq!(typen(&["construct", "--p", "5", "--c", "2", "--m", "3", "--n", "3"]).0, 2);
    assert_eq!(typen(&["construct", "--p", "4", "--c", "2", "--m", "1", "--n", "2"]).0, 2);
    assert_eq!(typen(&["construct", "--p", "5", "--c", "2", "--m", "1", "--n", "5"]).0, 2);
}

#[test]
fn verify_round_trip_and_corruption() {
    let seq = scratch("exc.json");
    let seq = seq.to_str().unwrap();
    let (code, _, _) = typen(&["construct", "--p", "5", "--c", "2", "--m", "1", "--n", "2", "--sequence-out", seq]);
    assert_eq!(code, 0);
    let (code, doc, _) = typen(&["verify", "--input", seq]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["constituents"]["ell"], 26);
    assert_eq!(doc["report"]["bridge"]["holds"], true);

    let mut record: Value = serde_json::from_str(&std::fs::read_to_string(seq).unwrap()).unwrap();
    let b = record["betas"][23].as_u64().unwrap();
    record["betas"][23] = json!((b + 1) % 5);
    let bad = write_record("bad.json", &record);
    let (code, doc, _) = typen(&["verify", "--input", &bad]);
    assert_eq!(code, 1);
    assert!(!doc["report"]["jacobi"]["violation"].is_null());
}

#[test]
fn verify_metabelian_records() {
    let ones = write_record("ones.json", &json!({"p": 5, "n": 3, "depth": 30, "betas": vec![1; 27]}));
    let (code, doc, _) = typen(&["verify", "--input", &ones]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["constituents"]["ell"], 6);
    assert!(doc["report"]["lcs"].is_null());

    let zeros = write_record("zeros.json", &json!({"p": 5, "n": 3, "depth": 30, "betas": vec![0; 27]}));
    let (code, doc, _) = typen(&["verify", "--input", &zeros]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["constituents"]["outcome"], "metabelian_within_depth");

    assert_eq!(typen(&["verify", "--input", "/nonexistent/seq.json"]).0, 2);
}

#[test]
fn search_budget_and_determinism() {
    let args = ["search", "--p", "3", "--n", "2", "--depth", "20"];
    let (code, a, _) = typen(&args);
    assert_eq!(code, 0);
    assert_eq!(a["report"]["partial"], false);
    assert_eq!(typen(&args).1, a);

    let (code, doc, _) = typen(&["search", "--p", "3", "--n", "2", "--depth", "20", "--budget", "10"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["partial"], true);
}

#[test]
fn polyclassify_small_run() {
    let (code, doc, _) = typen(&["polyclassify", "--p", "3", "--n", "2", "--kmax", "60"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["report"]["passed"], true);
    assert_eq!(doc["report"]["unexpected_pairs"], json!([]));
}

#[test]
fn text_format_and_output_file() {
    let out = scratch("report.txt");
    let out = out.to_str().unwrap();
    let (code, _, _) = typen(&["search", "--p", "3", "--n", "2", "--depth", "10", "--format", "text", "--output", out]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.lines().any(|l| l == "config.format: \"text\""));
    assert!(text.lines().any(|l| l == "report.partial: false"));
}
