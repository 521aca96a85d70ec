//! End-to-end tests of the command-line front end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopf-tutte"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopf-tutte-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn compute(name: &str, record: &str, poly: &str, extra: &[&str]) -> Output {
    let path = scratch(name, record);
    bin()
        .args([
            "compute",
            "--object",
            path.to_str().unwrap(),
            "--polynomial",
            poly,
        ])
        .args(extra)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const THETA: &str = r#"{"type":"ribbon","vertices":[[0,2,4],[1,5,3]],
  "edges":[{"pair":[0,1],"sign":1},{"pair":[2,3],"sign":1},{"pair":[4,5],"sign":1}]}"#;

#[test]
fn tutte_of_uniform_matroid() {
    let out = compute("u.json", r#"{"type":"uniform","k":2,"n":3}"#, "tutte", &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x^2 + x + y"));
    let records: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(records[0]["exponents"]["x"], 4);
}

#[test]
fn penrose_of_plane_theta() {
    let out = compute("theta.json", THETA, "penrose", &["--lambda", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("6"));
    let lv = compute("theta-lv.json", THETA, "lv", &[]);
    assert_eq!(stdout(&lv).lines().next(), Some("y^2 + x + y"));
}

#[test]
fn graph_and_delta_matroid_records() {
    let g = compute(
        "g.json",
        r#"{"type":"graph","v":2,"edges":[[0,1],[0,1]]}"#,
        "tutte",
        &[],
    );
    assert_eq!(stdout(&g).lines().next(), Some("x + y"));
    let d = compute(
        "d.json",
        r#"{"type":"delta-matroid","n":1,"feasible":[[],[0]]}"#,
        "br2",
        &[],
    );
    assert_eq!(stdout(&d).lines().next(), Some("sx + sy"));
}

#[test]
fn invalid_inputs_report_location() {
    let bad = compute(
        "bad.json",
        r#"{"type":"matroid","n":2,"ranks":[0,1,1,3]}"#,
        "tutte",
        &[],
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("field `ranks`"));
    let broken = compute("broken.json", r#"{"type":"matroid","#, "tutte", &[]);
    assert!(String::from_utf8_lossy(&broken.stderr).contains("line 1"));
    let unknown = compute("u2.json", r#"{"type":"uniform","k":1,"n":1}"#, "nope", &[]);
    assert_eq!(unknown.status.code(), Some(2));
    let no_lambda = compute("theta2.json", THETA, "penrose", &[]);
    assert!(String::from_utf8_lossy(&no_lambda.stderr).contains("--lambda"));
}

#[test]
fn verify_writes_a_json_report() {
    let report = scratch("report.json", "");
    let out = bin()
        .args([
            "verify",
            "--suite",
            "anchors",
            "--max-elements",
            "3",
            "--json-report",
            report.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["suite"], "anchors");
    assert_eq!(json["failures"].as_array().unwrap().len(), 0);
    assert!(json["cases"].as_u64().unwrap() > 0);
}

#[test]
fn verify_rejects_unknown_suite_and_oversized_corpus() {
    let out = bin()
        .args(["verify", "--suite", "bogus", "--max-elements", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify", "--suite", "anchors", "--max-elements", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
