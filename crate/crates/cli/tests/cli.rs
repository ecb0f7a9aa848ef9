use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qhayd(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhayd"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run qhayd")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn emit(dir: &Path, name: &str, field: &str) {
    let out = qhayd(dir, &["zoo", "emit", name, "--field", field, "--out", name]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn validate_zoo_algebra() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "kz2", "q");
    let out = qhayd(dir.path(), &["validate", "kz2/algebra.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS pentagon"));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn validate_reads_stdin() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "kz3", "q");
    let text = std::fs::read(dir.path().join("kz3/algebra.json")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_qhayd"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn h4_kg_passes_three_checks() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "h4", "q");
    let out = qhayd(dir.path(), &["ayd", "check", "h4/ayd_h4_kg.json"]);
    assert_eq!(code(&out), 0);
    let passes = stdout(&out)
        .lines()
        .filter(|l| l.starts_with("PASS"))
        .count();
    assert_eq!(passes, 3);
}

#[test]
fn broken_coaction_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "h4", "q");
    let path = dir.path().join("h4/ayd_h4_kg.json");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["map"] = serde_json::json!([["1"], ["0"], ["0"], ["0"]]);
    std::fs::write(dir.path().join("h4/bad.json"), doc.to_string()).unwrap();

    let out = qhayd(dir.path(), &["--json", "ayd", "check", "h4/bad.json"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["exit_code"], 1);
    let item = &report["checks"][0];
    assert_eq!(item["name"], "aYD-module");
    assert_eq!(item["passed"], false);
    assert_eq!(item["witness"]["indices"], serde_json::json!([2]));
    assert!(item["witness"]["note"]
        .as_str()
        .unwrap()
        .starts_with("h = x"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"dim\": 2").unwrap();
    let out = qhayd(dir.path(), &["validate", "bad.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    std::fs::write(
        dir.path().join("shape.json"),
        r#"{"field":{"type":"Q"},"dim":2,"basis":["1"],
        "unit":[1],"mult":[],"delta":[],"counit":[],"phi":[],"S":[],"alpha":[],"beta":[]}"#,
    )
    .unwrap();
    assert_eq!(code(&qhayd(dir.path(), &["validate", "shape.json"])), 2);
    assert_eq!(code(&qhayd(dir.path(), &["validate", "missing.json"])), 2);

    let out = qhayd(dir.path(), &["--json", "validate", "missing.json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["exit_code"], 2);
    assert!(report["error"].as_str().unwrap().contains("missing.json"));
}

#[test]
fn json_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "h4", "q");
    for args in [
        &["--json", "ayd", "check", "h4/ayd_h4_kg.json"][..],
        &["--json", "ayd", "stability", "h4/ayd_h4_kg.json"],
        &["--json", "zoo", "list"],
    ] {
        let a = qhayd(dir.path(), args);
        let b = qhayd(dir.path(), args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        let report: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(report.get("command").is_some());
    }
}

#[test]
fn convert_round_trips_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "kz2", "q");
    let d = dir.path();
    assert_eq!(
        code(&qhayd(
            d,
            &[
                "ayd",
                "convert",
                "kz2/ayd_kz2_sign.json",
                "--to",
                "II",
                "--out",
                "two.json"
            ]
        )),
        0
    );
    assert_eq!(code(&qhayd(d, &["ayd", "check", "two.json"])), 0);
    assert_eq!(
        code(&qhayd(
            d,
            &["ayd", "convert", "two.json", "--to", "I", "--out", "one.json"]
        )),
        0
    );
    let a: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("one.json")).unwrap()).unwrap();
    let b: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("kz2/ayd_kz2_sign.json")).unwrap())
            .unwrap();
    assert_eq!(a["map"], b["map"]);

    assert_eq!(
        code(&qhayd(d, &["ayd", "stability", "kz2/ayd_kz2_trivial.json"])),
        0
    );
    assert_eq!(code(&qhayd(d, &["ayd", "stability", "two.json"])), 1);
}

#[test]
fn solve_writes_points() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "kz2_omega", "fp:3");
    let out = qhayd(
        dir.path(),
        &[
            "ayd",
            "solve",
            "--type",
            "I",
            "--module",
            "kz2_omega/module_char0.json",
            "--out",
            "pts.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("pts.json")).unwrap())
            .unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);

    emit(dir.path(), "h4", "q");
    let out = qhayd(
        dir.path(),
        &[
            "ayd",
            "solve",
            "--type",
            "I",
            "--module",
            "h4/module_h4_kg.json",
            "--over",
            "fp:3",
        ],
    );
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 1);
}

#[test]
fn tau_and_dsl_check() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path(), "h4", "q");
    let d = dir.path();
    let out = qhayd(
        d,
        &[
            "--json",
            "ayd",
            "tau",
            "h4/ayd_h4_kg.json",
            "--v",
            "h4/module_regular.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"].as_array().unwrap().len(), 4);

    let eq = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/ayd_module.swd");
    let eq = eq.to_str().unwrap();
    let ctx = r#"{"algebra": "h4/algebra.json", "modules": {"M": "h4/module_h4_kg.json"},
                  "rho": {"M": [["0"], ["1"], ["0"], ["0"]]}}"#;
    std::fs::write(d.join("ctx.json"), ctx).unwrap();
    assert_eq!(
        code(&qhayd(
            d,
            &["dsl", "check", "--eq", eq, "--ctx", "ctx.json"]
        )),
        0
    );
    std::fs::write(
        d.join("ctx.json"),
        ctx.replace(r#"["0"], ["1"]"#, r#"["1"], ["0"]"#),
    )
    .unwrap();
    assert_eq!(
        code(&qhayd(
            d,
            &["dsl", "check", "--eq", eq, "--ctx", "ctx.json"]
        )),
        1
    );
    std::fs::write(d.join("bad.swd"), "h k =").unwrap();
    assert_eq!(
        code(&qhayd(
            d,
            &["dsl", "check", "--eq", "bad.swd", "--ctx", "ctx.json"]
        )),
        2
    );
}
