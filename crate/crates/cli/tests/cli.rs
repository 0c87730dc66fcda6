use std::io::Write;
use std::process::{Command, Stdio};

use clap::Parser;
use serde_json::Value;
use vgit_cli::input::{parse, InputDocument};
use vgit_cli::{run, Args, CliError, EXIT_INTERNAL, EXIT_OK, EXIT_SCHEMA, EXIT_VIOLATIONS};

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn args(line: &[&str]) -> Args {
    let mut all = vec!["vgit"];
    all.extend_from_slice(line);
    Args::try_parse_from(all).unwrap()
}

fn json_of(line: &[&str], text: &str) -> (Value, i32) {
    let (out, code) = run(&args(line), text).unwrap();
    (serde_json::from_str(&out).unwrap(), code)
}

fn err_of(line: &[&str], text: &str) -> CliError {
    run(&args(line), text).unwrap_err()
}

const LINE: &str =
    r#"{"rank": 1, "weights": [{"label": "m", "coords": [-1]}, {"label": "p", "coords": [1]}]}"#;

#[test]
fn segment_fan_and_poset() {
    let text = fixture("segment.json");
    let (v, code) = json_of(&["fan", "--input", "x"], &text);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["num_classes"], 3);
    assert_eq!(v["result"]["num_chambers"], 1);
    let (dot, _) = run(&args(&["poset", "--input", "x", "--format", "dot"]), &text).unwrap();
    assert!(dot.starts_with("digraph poset {"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches("->").count(), 2);
}

#[test]
fn classify_outside_the_cone() {
    let (v, code) = json_of(
        &["classify", "--input", "x", "--theta", "5,0"],
        &fixture("ex1.json"),
    );
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"][0]["effective"], false);
    let (v, _) = json_of(&["classify", "--input", "x", "--theta", "-1/2"], LINE);
    assert_eq!(v["result"][0]["effective"], true);
    assert_eq!(v["result"][0]["class"]["chamber"], true);
}

#[test]
fn ex1_nilcone_and_fibers() {
    let text = fixture("ex1.json");
    let (v, _) = json_of(&["nilcone", "--input", "x"], &text);
    assert_eq!(v["result"]["num_components"], 6);
    let (v, _) = json_of(
        &["fiber", "--input", "x", "--grading", "-", "--component", "2"],
        &text,
    );
    assert_eq!(v["result"][0]["fiber"]["kind"], "WPS(1,2,3,4)");
    let (v, _) = json_of(
        &["fiber", "--input", "x", "--grading", "-", "--component", "0"],
        &text,
    );
    assert_eq!(v["result"][0]["fiber"]["kind"], "ToricNonWPS");
    assert_eq!(v["result"][0]["fiber"]["nonsimplicial_degree"], 2);
}

#[test]
fn ex2_intersection_relation() {
    let (v, _) = json_of(
        &["fiber", "--input", "x", "--component", "0,1"],
        &fixture("ex2.json"),
    );
    let f = &v["result"][0]["fiber"];
    let degrees: Vec<i64> = f["hilbert_basis"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 1, 2, 2]);
    assert_eq!(f["relations"][0]["relation"], "b3 + b4 = b1 + 3 b2");
}

#[test]
fn verify_exit_codes() {
    for name in [
        "segment.json",
        "square.json",
        "three_points.json",
        "explicit_faces.json",
    ] {
        let (v, code) = json_of(&["verify", "--input", "x"], &fixture(name));
        assert_eq!(code, EXIT_OK, "{name}");
        assert_eq!(v["result"]["num_violations"], 0, "{name}");
    }
    let (v, code) = json_of(&["verify", "--input", "x"], &fixture("explicit.json"));
    assert_eq!(code, EXIT_VIOLATIONS);
    assert!(v["result"]["num_violations"].as_u64().unwrap() > 0);
}

#[test]
fn schema_errors_name_the_field() {
    let cases = [
        (r#"{"rank": 1}"#, "weights"),
        (r#"{"rank": 1, "weights": [], "extra": 1}"#, "extra"),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1, 2]}]}"#,
            "weights",
        ),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1]}], "form": [["-1"]]}"#,
            "form",
        ),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1]}], "form": [["x/0"]]}"#,
            "form[0][0]",
        ),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1]}], "queries": [[1, 2]]}"#,
            "queries[0]",
        ),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1]}], "states": [["b"]]}"#,
            "states[0]",
        ),
        (
            r#"{"rank": 1, "weights": [{"label": "a", "coords": [1]}], "options": {"grid": -1}}"#,
            "options.grid",
        ),
    ];
    for (text, field) in cases {
        let e = err_of(&["fan", "--input", "x"], text);
        assert_eq!(e.code, EXIT_SCHEMA, "{text}");
        assert!(e.message.contains(field), "{text}: {}", e.message);
    }
}

#[test]
fn bad_form_minor() {
    let text = r#"{"rank": 2, "weights": [{"label": "a", "coords": [1, 0]}],
        "form": [[1, 2], [2, 1]]}"#;
    let e = err_of(&["fan", "--input", "x"], text);
    assert_eq!(e.code, EXIT_SCHEMA);
    assert!(e.message.starts_with("form:"), "{}", e.message);
}

#[test]
fn argument_errors() {
    let e = err_of(&["classify", "--input", "x", "--theta", "1,2"], LINE);
    assert_eq!(e.code, EXIT_SCHEMA);
    assert!(e.message.contains("--theta"));
    let e = err_of(&["classify", "--input", "x"], LINE);
    assert_eq!(e.code, EXIT_SCHEMA);
    let e = err_of(
        &["classify", "--input", "x", "--theta", "0", "--format", "dot"],
        LINE,
    );
    assert_eq!(e.code, EXIT_SCHEMA);
    assert!(e.message.contains("dot"));
    let e = err_of(
        &["fiber", "--input", "x", "--component", "9"],
        &fixture("ex1.json"),
    );
    assert_eq!(e.code, EXIT_SCHEMA);
    let e = err_of(
        &["fiber", "--input", "x", "--component", "0"],
        &fixture("ex1.json"),
    );
    assert_eq!(e.code, EXIT_INTERNAL);
    assert!(e.message.contains("grading"));
    assert!(Args::try_parse_from(["vgit", "fan", "--input", "x", "--grading", "0"]).is_err());
}

#[test]
fn fiber_without_component_reports_per_entry() {
    let (v, code) = json_of(&["fiber", "--input", "x"], &fixture("ex1.json"));
    assert_eq!(code, EXIT_OK);
    let entries = v["result"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(entries
        .iter()
        .all(|e| e.get("fiber").is_some() || e.get("error").is_some()));
    assert_eq!(entries.iter().filter(|e| e.get("fiber").is_some()).count(), 2);
}

#[test]
fn document_round_trip() {
    for name in ["ex1.json", "ex2.json", "square.json", "explicit.json"] {
        let text = fixture(name);
        let doc: InputDocument = parse(&text).unwrap();
        let again: InputDocument = parse(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}

#[test]
fn table_output_is_aligned() {
    let (out, _) = run(
        &args(&["walls", "--input", "x", "--format", "table"]),
        &fixture("segment.json"),
    )
    .unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() >= 3);
    assert!(lines[2].chars().all(|c| c == '-' || c == ' '));
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    let exe = env!("CARGO_BIN_EXE_vgit");
    let mut child = Command::new(exe)
        .args(["fan", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(LINE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["num_classes"], 3);

    let out = Command::new(exe)
        .args(["fan", "--input", "/nonexistent/doc.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_SCHEMA));

    let mut child = Command::new(exe)
        .args(["fan", "--input", "-"])
        .stdin(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"{\"rank\": 0}").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_SCHEMA));
    assert!(!out.stderr.is_empty());
}

#[test]
fn repeated_runs_agree() {
    let text = fixture("three_points.json");
    for line in [
        &["fan", "--input", "x"][..],
        &["strata", "--input", "x"],
        &["poset", "--input", "x", "--format", "dot"],
    ] {
        assert_eq!(run(&args(line), &text).unwrap(), run(&args(line), &text).unwrap());
    }
}
