use std::process::{Command, Output};

use serde_json::Value;

fn sullivan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sullivan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--no-timestamp"]);
    let out = sullivan(&all);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (value, out.status.code().unwrap())
}

fn numbers(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn toomer_of_five_generator_example() {
    let (doc, code) = json(&["toomer", "--lib", "example-5gen"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["e0"], 3);
    assert_eq!(doc["result"]["cat0"], 3);
    assert_eq!(numbers(&doc["result"]["mu"]), vec![1, 2, 2, 1]);
}

#[test]
fn heisenberg_betti_numbers() {
    let (doc, code) = json(&["cohomology", "--lib", "heisenberg", "--window", "3"]);
    assert_eq!(code, 0);
    assert_eq!(numbers(&doc["result"]["betti"]), vec![1, 2, 2, 1]);
}

#[test]
fn all_checks_pass_on_cpl_sphere() {
    let (doc, code) = json(&["verify", "all", "--lib", "cpl-sphere:4,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["result"]["failed"], 0);
    for report in doc["result"]["reports"].as_array().unwrap() {
        assert_ne!(report["verdict"], "fail", "{report}");
    }
}

#[test]
fn bigraded_strands() {
    let (doc, code) = json(&["bigraded", "--lib", "example-5gen"]);
    assert_eq!(code, 0);
    assert_eq!(numbers(&doc["result"]["length_dimensions"]), vec![1, 2, 2, 1]);
    assert_eq!(doc["result"]["formal_dimension"], 7);
}

#[test]
fn sequences_report_exactness() {
    let (wang, code) = json(&["wang", "--lib", "heisenberg", "--gen", "a"]);
    assert_eq!(code, 0);
    assert_eq!(wang["result"]["exact"], true);
    let (gysin, code) = json(&["gysin", "--lib", "cp:2", "--gen", "x"]);
    assert_eq!(code, 0);
    assert_eq!(gysin["result"]["formal_dimension_relation"]["holds"], true);
}

#[test]
fn json_is_stable_without_timestamp() {
    let args = ["gap-scan", "--seed", "3", "--count", "3", "--format", "json", "--no-timestamp"];
    let a = sullivan(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_sullivan"))
        .args(args)
        .env("SULLIVAN_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timestamp_is_present_by_default() {
    let out = sullivan(&["library", "list", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["generated_at"].is_u64());
}

#[test]
fn text_rendering_carries_the_json_numbers() {
    let text = String::from_utf8(sullivan(&["toomer", "--lib", "example-5gen", "--no-timestamp"]).stdout).unwrap();
    assert!(text.contains("e0: 3"));
    assert!(text.contains("mu: 1 2 2 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(sullivan(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sullivan(&["toomer"]).status.code(), Some(2));
    assert_eq!(sullivan(&["toomer", "--lib", "no-such-model"]).status.code(), Some(2));
    assert_eq!(sullivan(&["verify", "no-such-check", "--lib", "cp:2"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("sullivan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sul");
    std::fs::write(&bad, "gen x 2\ngen y 3\nd y = x\n").unwrap();
    let (doc, code) = json(&["validate", "--model", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(doc["result"]["error"].as_str().unwrap().contains("3:"));

    let square = dir.join("square.sul");
    std::fs::write(&square, "gen x 2\ngen y 3\ngen z 4\nd y = x^2\nd z = x*y\n").unwrap();
    let (doc, code) = json(&["validate", "--model", square.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(!doc["result"]["violations"].as_array().unwrap().is_empty());

    assert_eq!(sullivan(&["bigraded", "--lib", "mixed-1"]).status.code(), Some(3));
    assert_eq!(sullivan(&["wang", "--lib", "cp:2", "--gen", "x"]).status.code(), Some(3));
}

#[test]
fn library_emit_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("sullivan-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cp3.sul");
    let out = sullivan(&["library", "emit", "cp:3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (doc, code) = json(&["validate", "--model", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["formal_dimension_formula"], 6);
}

#[test]
fn random_source_is_reproducible() {
    let (a, code) = json(&["toomer", "--seed", "5", "--evens", "1", "--odds", "1", "--length", "3"]);
    assert_eq!(code, 0);
    let (b, _) = json(&["toomer", "--seed", "5", "--evens", "1", "--odds", "1", "--length", "3"]);
    assert_eq!(a, b);
    assert_eq!(a["result"]["e0"], 2);
}
