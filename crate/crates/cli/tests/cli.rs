use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperturan"))
        .args(args)
        .current_dir(dir)
        .env_remove("HYPERTURAN_CACHE")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

const K4: &str = "2 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn ex_tabulates_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ex", "--n", "4..7", "--T", "K3_2", "--F", "K3_2(1,1,2)", "--no-cache"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5, "{text}");
    assert!(text.lines().skip(1).all(|l| l.contains("exact")), "{text}");
}

#[test]
fn ex_json_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["ex", "--n", "4..=7", "--T", "K3_2", "--F", "K3_2(1,1,2)", "--format", "json", "--no-cache"],
    );
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let values: Vec<u64> = rows.iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![1, 2, 2, 3]);
}

#[test]
fn ex_when_t_is_forbidden_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["ex", "--n", "3..5", "--T", "K3_2", "--F", "K3_2(1,1,1)", "--format", "json", "--no-cache"],
    );
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.iter().all(|r| r["value"] == 0));
}

#[test]
fn malformed_pattern_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ex", "--n", "4", "--T", "K3_2", "--F", "K3_2(1,1,"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_range_and_unknown_claim_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k4.txt", K4);
    assert_eq!(code(&run(dir.path(), &["ex", "--n", "7..4", "--T", "K3_2", "--F", "K3_2(1,1,2)"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--host", "k4.txt", "--claim", "bogus"])), 2);
    assert_eq!(code(&run(dir.path(), &["bounds", "--r", "3", "--a", "3,2,2"])), 2);
}

#[test]
fn oversized_exact_search_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ex", "--n", "12", "--T", "K2_2", "--F", "K2_2(2,2)", "--no-cache"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn heuristic_fallback_reports_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["ex", "--n", "12", "--T", "K2_2", "--F", "K2_2(2,2)", "--heuristic", "--format", "json", "--no-cache"],
    );
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["mode"], "heuristic");
    assert!(rows[0]["value"].as_u64().unwrap() >= 12);
}

#[test]
fn lbap_construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["construct", "--kind", "lbap", "--n", "8", "--r", "3", "--out", "g.txt", "--verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for claim in ["free:K3_2(1,1,2)", "lbap-properties", "edge-disjoint:32", "cliques:32"] {
        let v = run(d, &["verify", "--host", "g.txt", "--claim", claim]);
        assert_eq!(code(&v), 0, "{claim}: {}", stdout(&v));
        let json: Value = serde_json::from_str(&stdout(&v)).unwrap();
        assert_eq!(json["verified"], true);
    }
    assert_eq!(code(&run(d, &["verify", "--host", "g.txt", "--claim", "cliques:31"])), 1);
}

#[test]
fn verify_refutes_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k4.txt", K4);
    let out = run(dir.path(), &["verify", "--host", "k4.txt", "--claim", "free:K3_2(1,1,2)"]);
    assert_eq!(code(&out), 1);
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verified"], false);
    assert!(json["detail"]["witness"].is_array());
}

#[test]
fn cliques_on_empty_host() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "empty.txt", "2 5 0\n");
    let out = run(dir.path(), &["verify", "--host", "empty.txt", "--claim", "cliques:0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn chain_claim_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k4.txt", K4);
    let out = run(dir.path(), &["verify", "--host", "k4.txt", "--claim", "chain:K4_3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn trace_lines_are_json() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k4.txt", K4);
    let out = run(
        dir.path(),
        &["verify", "--host", "k4.txt", "--claim", "free:K3_2(2,2,2)", "--trace", "t.jsonl"],
    );
    assert_eq!(code(&out), 0);
    let trace = std::fs::read_to_string(dir.path().join("t.jsonl")).unwrap();
    let steps: Vec<String> = trace
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["step"].as_str().unwrap_or("").to_string())
        .collect();
    assert_eq!(steps.first().map(String::as_str), Some("host"));
    assert_eq!(steps.last().map(String::as_str), Some("claim"));
    assert!(steps.iter().any(|s| s == "thin"));
}

#[test]
fn deletion_with_zero_probability_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["construct", "--kind", "deletion", "--n", "10", "--r", "3", "--F", "K3_2(2,2,2)", "--p", "0", "--out", "d.txt", "--verify"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = run(dir.path(), &["verify", "--host", "d.txt", "--claim", "cliques:0"]);
    assert_eq!(code(&v), 0);
}

#[test]
fn lb4_rejects_base_with_forbidden_graph() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "base.txt", "2 6 4\n0 1\n1 2\n2 3\n0 3\n");
    let out = run(
        dir.path(),
        &["construct", "--kind", "lb4", "--n", "9", "--r", "3", "--a", "2,2,2", "--base", "base.txt", "--out", "h.txt"],
    );
    assert_ne!(code(&out), 0);
}

#[test]
fn lb4_without_base_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["construct", "--kind", "lb4", "--n", "9", "--r", "3", "--a", "2,2,2", "--out", "h.txt", "--verify"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = run(dir.path(), &["verify", "--host", "h.txt", "--claim", "free:K3_2(2,2,2)"]);
    assert_eq!(code(&v), 0);
}

#[test]
fn cache_round_trip_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["ex", "--n", "6", "--T", "K3_2", "--F", "K3_2(1,1,2)", "--cache", "c", "--format", "json"];
    let first = run(d, &args);
    assert_eq!(code(&first), 0);
    let entries: Vec<_> = std::fs::read_dir(d.join("c")).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let second = run(d, &args);
    assert_eq!(code(&second), 0);
    let value = |o: &Output| serde_json::from_str::<Value>(&stdout(o)).unwrap()[0]["value"].clone();
    assert_eq!(value(&first), value(&second));

    let text = std::fs::read_to_string(&entries[0]).unwrap();
    let tampered = text.replace("\"value\":2", "\"value\":5");
    assert_ne!(text, tampered);
    std::fs::write(&entries[0], tampered).unwrap();
    let third = run(d, &args);
    assert_eq!(code(&third), 1);
    assert!(String::from_utf8_lossy(&third.stderr).contains("cache"));
}

#[test]
fn bounds_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bounds", "--r", "3", "--a", "2,2,2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = if json.is_array() { &json[0] } else { &json };
    assert_eq!(row["upper"], "11/4");
    assert_eq!(row["consistent"], true);
    let csv = run(dir.path(), &["bounds", "--r", "4", "--max-a", "2", "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    assert!(stdout(&csv).lines().count() > 2);
}
