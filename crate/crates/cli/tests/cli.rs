use std::process::Command;

use lam_core::frontend::parse_term;

fn lam(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lam")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = lam(&all);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn generated_files_check_and_eliminate() {
    let dir = std::env::temp_dir().join(format!("lam-cli-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let (code, _) = lam(&["gen", "ladd", "--n", "2", "--out", d]);
    assert_eq!(code, 0);
    let lamd = dir.join("ladd_2.lamd");
    let lamd = lamd.to_str().unwrap();
    let (code, r) = json(&["check", lamd]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
    let (code, r) = json(&["cutelim", lamd]);
    assert_eq!(code, 0);
    let got = parse_term(r["measurements"]["subject"].as_str().unwrap()).unwrap();
    assert_eq!(got, parse_term("<<\\x. x, \\x. x>, <\\x. x, \\x. x>>").unwrap());
    let (code, r) = json(&["normalize", dir.join("ladd_2.lam").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["measurements"]["steps"], 5);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn report_schema_is_stable() {
    let (_, r) = json(&["inhabitants", "Bool"]);
    for key in ["command", "inputs", "measurements", "verdict", "details"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["measurements"]["count"], 2);
}

#[test]
fn failing_check_exits_nonzero() {
    let (code, r) = json(&["check", "(rule ax (seq ((x a)) y a))"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "fail");
    assert!(!r["details"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_is_a_usage_error() {
    let (code, _) = lam(&["normalize", "\\x."]);
    assert_eq!(code, 2);
    let (code, _) = lam(&["suite", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn fast_suites_pass_from_the_command_line() {
    let (code, r) = json(&["suite", "blowup", "classification", "duplicator"]);
    assert_eq!(code, 0);
    assert_eq!(r.as_array().unwrap().len(), 3);
}

#[test]
fn gadgets_for_bool() {
    let (code, r) = json(&["translate", "--eraser", "Bool", "--duplicator", "Bool"]);
    assert_eq!(code, 0);
    assert!(r["measurements"]["duplicator_size"].as_u64().unwrap() > 0);
}
