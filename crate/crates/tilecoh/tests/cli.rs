//! The command-line tool: reports, exports and one exit code per error class.

use std::path::PathBuf;
use std::process::{Command, Output};

use tilecoh::linalg::IntMatrix;

fn tilecoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecoh"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tilecoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn code(args: &[&str]) -> i32 {
    tilecoh(args).status.code().unwrap()
}

#[test]
fn analyze_writes_a_report() {
    let out = tilecoh(&["analyze", "builtin:ex3", "--ring", "--probe", "5:2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["complex"]["counts"], serde_json::json!([3, 14, 23]));
    assert!(report["diagnostics"]["timings_ms"].is_object());
    assert_eq!(report["frequency"]["module"]["rendered"], "(1/84)Z[1/5]");
    assert_eq!(report["cohomology"][1]["probes"][0]["prime"], 5);
}

#[test]
fn analyze_product_to_file() {
    let dir = std::env::temp_dir().join(format!("tilecoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let status = tilecoh(&["--threads", "2", "analyze", "fixtures/ex2-a.json", "--product", "fixtures/ex2-b.json", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["rule"]["dimension"], 2);
    assert_eq!(report["diagnostics"]["threads"], 2);
    assert_eq!(report["frequency"]["module"]["rendered"], "(1/3)Z[1/2]");
}

#[test]
fn csv_export_matches_json_export() {
    let csv = tilecoh(&["export", "builtin:chair-2", "--what", "matrices", "--format", "csv", "--degree", "2"]);
    let json = tilecoh(&["export", "builtin:chair-2", "--what", "matrices", "--degree", "2"]);
    assert!(csv.status.success() && json.status.success());
    let a = IntMatrix::from_csv(&String::from_utf8(csv.stdout).unwrap()).unwrap();
    let b = IntMatrix::from_json(&String::from_utf8(json.stdout).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.nrows(), 19);
}

#[test]
fn window_and_complex_dumps_are_json() {
    for what in ["windows", "complex"] {
        let out = tilecoh(&["export", "builtin:ex4", "--what", what]);
        assert!(out.status.success());
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
    }
}

#[test]
fn schema_errors() {
    let bad = scratch("bad.json", r#"{"name": "x", "dimension": 1}"#);
    assert_eq!(code(&["analyze", bad.to_str().unwrap()]), 10);
    let range = scratch("range.json", r#"{"name":"x","dimension":1,"expansion":2,"colors":2,"table":[[0,5],[1,0]]}"#);
    assert_eq!(code(&["analyze", range.to_str().unwrap()]), 11);
    let length = scratch("length.json", r#"{"name":"x","dimension":1,"expansion":2,"colors":2,"table":[[0,1,1],[1,0]]}"#);
    assert_eq!(code(&["analyze", length.to_str().unwrap()]), 12);
}

#[test]
fn non_primitive_rule() {
    let rule = scratch("reducible.json", r#"{"name":"x","dimension":1,"expansion":2,"colors":2,"table":[[0,0],[1,1]]}"#);
    assert_eq!(code(&["analyze", rule.to_str().unwrap()]), 20);
}

#[test]
fn complex_errors() {
    assert_eq!(code(&["analyze", "builtin:chair-2", "--complex", "ap-uncollared"]), 30);
    let swap = ["analyze", "builtin:equivariant-4d", "--complex", "ap-uncollared", "--quotient", "fixtures/involutions/equivariant-swap.json"];
    assert_eq!(code(&swap), 34);
}

#[test]
fn dimension_and_format_errors() {
    assert_eq!(code(&["analyze", "builtin:ex3", "--chern"]), 43);
    assert_eq!(code(&["export", "builtin:ex3", "--what", "matrices", "--format", "csv"]), 50);
    assert_eq!(code(&["analyze", "no/such/rule.json"]), 51);
    // usage errors come from the argument parser
    assert_eq!(code(&["analyze", "builtin:ex3", "--complex", "simplicial"]), 2);
}
