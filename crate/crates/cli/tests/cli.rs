use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mackey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn reproduction_suite_passes_with_each_example_once() {
    let out = mackey(&["reproduce", "paper", "--format", "json", "--no-timestamps"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["status"], "pass");
    let records = doc["records"].as_array().unwrap();
    for n in 4..=7 {
        let key = format!("example-{n}");
        let hits: Vec<_> = records.iter().filter(|r| r["name"] == key.as_str()).collect();
        assert_eq!(hits.len(), 1, "{key}");
        assert_eq!(hits[0]["anchor"], format!("Example {n}").as_str());
    }
    for r in records {
        assert!(r["anchor"].as_str().is_some_and(|a| !a.is_empty()));
        assert!(r["expected"].is_object());
        assert!(r.get("wall_clock_ms").is_none());
    }
    for key in ["theorem-1-cyclic4", "theorem-1-klein", "theorem-1-sym3"] {
        assert!(records.iter().any(|r| r["name"] == key), "{key} missing");
    }
}

#[test]
fn json_reports_are_byte_identical() {
    for args in [
        &["check", "self-injective", "--group", "klein", "--mod", "2"][..],
        &["burnside", "present", "--group", "klein", "--mod", "2"],
        &["check", "gorenstein", "--group", "cyclic:3"],
        &["mackey", "dim", "--group", "sym:3"],
    ] {
        let mut full = args.to_vec();
        full.extend(["--format", "json", "--no-timestamps"]);
        let (a, b) = (mackey(&full), mackey(&full));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timestamps_appear_unless_suppressed() {
    let out = mackey(&["group", "info", "--group", "cyclic:4", "--format", "json"]);
    let doc = json(&out);
    assert!(doc["generated_at_unix"].is_u64());
    assert!(doc["records"][0]["wall_clock_ms"].is_u64());
}

#[test]
fn negative_finding_is_a_successful_check() {
    let out = mackey(&["check", "self-injective", "--group", "cyclic:4", "--mod", "2", "--format", "json", "--no-timestamps"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let r = &doc["records"][0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["finding"], "does-not-hold");
    assert_eq!(r["computed"]["self_injective"], false);
    assert_eq!(doc["records"][1]["finding"], "holds");
}

#[test]
fn klein_presentation_after_substitution() {
    let out = mackey(&["burnside", "present", "--group", "klein", "--mod", "2", "--no-timestamps"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s: h + k + ℓ"), "{text}");
    assert!(text.contains("h^2 = k^2 = s^2 = hs = ks = 0"), "{text}");
}

#[test]
fn composites_in_bracket_notation() {
    let base = ["mackey", "compose", "--group", "cyclic:4", "--no-timestamps", "--format", "json"];
    let run = |left: &str, right: &str, extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend(["--left", left, "--right", right]);
        args.extend(extra);
        let out = mackey(&args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        json(&out)["records"][0]["computed"]["left_after_right"].as_str().unwrap().to_string()
    };
    assert_eq!(run("[G/G <- G/H1 -id-> G/H1]", "G,1,G", &[]), "2 * [G/G <- G/1 -proj-> G/H1]");
    assert_eq!(run("G,H1,H1", "G,H1,G", &[]), "2 * [G/G <- G/H1 -id-> G/H1]");
    assert_eq!(run("G,H1,H1", "G,1,G", &["--mod", "2"]), "0");
    assert_eq!(run("G,H1,H1", "G,1,G", &["--mod", "3"]), "2 * [G/G <- G/1 -proj-> G/H1]");
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["group", "info", "--group", "cyclic:0"][..],
        &["group", "info", "--group", "tetra:4"],
        &["group", "info", "--group", "{\"table\": [[0, 1], [1"],
        &["burnside", "table", "--group", "cyclic:4", "--mod", "4"],
        &["check", "self-injective", "--group", "cyclic:4"],
        &["mackey", "compose", "--group", "cyclic:4", "--left", "G,H7,H1", "--right", "G,1,G"],
        &["mackey", "compose", "--group", "cyclic:4", "--left", "H1,H1,H1", "--right", "G,1,G"],
        &["group", "info"],
        &["group", "info", "--group", "klein", "--format", "yaml"],
    ] {
        let out = mackey(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn error_messages_name_the_problem() {
    let out = mackey(&["group", "info", "--group", "cyclic:0"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 8"), "{err}");
}

#[test]
fn caps_exit_with_three() {
    assert_eq!(code(&mackey(&["group", "info", "--group", "sym:5"])), 3);
    assert_eq!(code(&mackey(&["mackey", "dim", "--group", "cyclic:4", "--cap", "3"])), 3);
}

#[test]
fn permutation_groups_are_accepted() {
    let out = mackey(&["group", "info", "--group", "{\"permutations\": [[1, 2, 0]]}", "--format", "json", "--no-timestamps"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["records"][0]["computed"]["order"], 3);
}

#[test]
fn manifest_drift_fails_the_run() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/manifest/reference.json")).unwrap();
    let mut manifest: Value = serde_json::from_str(&text).unwrap();
    let checks = manifest["checks"].as_array_mut().unwrap();
    checks.retain(|c| c["key"] == "example-4" || c["key"] == "theorem-2-klein");
    checks[0]["expected"]["over_z"]["relations"][0] = "g^2 = 3g".into();
    let path = scratch("drifted.json", &manifest.to_string());
    let out = mackey(&["reproduce", "paper", "--manifest", path.to_str().unwrap(), "--format", "json", "--no-timestamps"]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["status"], "fail");
    assert_eq!(doc["records"][0]["status"], "fail");
    assert_eq!(doc["records"][1]["status"], "pass");
}

#[test]
fn malformed_manifests_are_input_errors() {
    let dup = r#"{"description": "", "checks": [
        {"key": "a", "anchor": "x", "provenance": "derived", "kind": "gustafson", "group": "cyclic:2", "expected": {}},
        {"key": "a", "anchor": "x", "provenance": "derived", "kind": "gustafson", "group": "cyclic:2", "expected": {}}]}"#;
    let unknown_kind = r#"{"description": "", "checks": [
        {"key": "a", "anchor": "x", "provenance": "derived", "kind": "nope", "group": "cyclic:2", "expected": {}}]}"#;
    for (name, body) in [("dup.json", dup), ("kind.json", unknown_kind), ("broken.json", "{")] {
        let path = scratch(name, body);
        assert_eq!(code(&mackey(&["reproduce", "paper", "--manifest", path.to_str().unwrap()])), 2, "{name}");
    }
    assert_eq!(code(&mackey(&["reproduce", "paper", "--manifest", "/nonexistent/manifest.json"])), 2);
}
