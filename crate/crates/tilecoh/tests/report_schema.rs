//! Reports validate against docs/report-schema.json and are deterministic.

use std::process::Command;

fn schema() -> jsonschema::Validator {
    let path = format!("{}/docs/report-schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn analyze(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_tilecoh"))
        .arg("analyze")
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn reports_match_the_schema() {
    let v = schema();
    for args in [
        vec!["builtin:ex3", "--ring", "--probe", "5:2"],
        vec!["builtin:equivariant-4d", "--complex", "ap-uncollared", "--ring", "--chern"],
        vec![
            "builtin:equivariant-4d",
            "--complex",
            "ap-uncollared",
            "--triangulate",
            "--quotient",
            "fixtures/involutions/equivariant-swap.json",
            "--chern",
        ],
    ] {
        let report = analyze(&args);
        let errors: Vec<String> = v.iter_errors(&report).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    }
}

#[test]
fn repeated_runs_agree_except_for_timings() {
    let strip = |mut r: serde_json::Value| {
        r.as_object_mut().unwrap().remove("diagnostics");
        r
    };
    let a = strip(analyze(&["builtin:chair-2", "--ring", "--threads", "1"]));
    let b = strip(analyze(&["builtin:chair-2", "--ring", "--threads", "3"]));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
