use serde_json::Value;
use std::process::{Command, Output};

fn qsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsc")).args(args).output().expect("qsc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cyclo_prints_coefficients() {
    let o = qsc(&["cyclo", "--n", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().nth(1), Some("1 -1 1"));
    let o = qsc(&["cyclo", "--n", "5", "--neg"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1 -1 1 -1 1"));
    assert_eq!(qsc(&["cyclo", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let held = qsc(&["check", "--id", "T1", "--n", "5", "--d", "2", "--r", "1"]);
    assert_eq!(held.status.code(), Some(0));
    assert!(stdout(&held).contains("held 1"));
    let negative_r = qsc(&["check", "--id", "T2", "--n", "7", "--d", "4", "--r", "-1"]);
    assert_eq!(negative_r.status.code(), Some(0));
    // The displayed E4 modulus asks for Phi_7(q)^3; only the square divides.
    let failed = qsc(&["check", "--id", "E4", "--n", "7"]);
    assert_eq!(failed.status.code(), Some(1));
    assert!(stdout(&failed).contains("residue:"));
    let inapplicable = qsc(&["check", "--id", "E2", "--p", "5"]);
    assert_eq!(inapplicable.status.code(), Some(0));
    assert!(stdout(&inapplicable).contains("inapplicable 1"));
    assert_eq!(qsc(&["check", "--id", "B2", "--p", "7"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qsc(&["check", "--id", "T1", "--n", "5"]).status.code(), Some(2));
    assert_eq!(qsc(&["check", "--id", "T1", "--n", "9", "--d", "3", "--r", "0"]).status.code(), Some(2));
    assert_eq!(qsc(&["check", "--id", "T9", "--n", "5"]).status.code(), Some(2));
    assert_eq!(qsc(&["check", "--id", "B2", "--p", "9"]).status.code(), Some(2));
    assert_eq!(qsc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.json");
    let o = qsc(&[
        "sweep", "--id", "T1", "--n-max", "9", "--d-list", "2,3", "--r-list", "-1,1", "--out",
        out.to_str().unwrap(), "--format", "json", "--jobs", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["statement"], "T1");
    assert_eq!(v["summary"]["failed"], 0);
    // n = 3, 5, 7, 9 with d = 2; d = 3 drops n = 3, 9 and r = -1 at n = 5, 7
    assert_eq!(v["summary"]["checked"], 10);
    assert_eq!(v["records"][0]["parameters"]["r"], -1);
    assert!(v["skipped"].as_array().unwrap().iter().any(|s| s["reason"].as_str().unwrap().starts_with("gcd")));
}

#[test]
fn sweep_csv_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b2.csv");
    let o = qsc(&["sweep", "--id", "B2", "--n-max", "0", "--p-max", "13", "--out", csv.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("statement,n,d,r,s,p,e,outcome"));
    assert_eq!(body.lines().count(), 1 + 5);
    let text = dir.path().join("e4.txt");
    let o = qsc(&["sweep", "--id", "E4", "--n-max", "9", "--out", text.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(std::fs::read_to_string(&text).unwrap().contains("FAILED"));
}

#[test]
fn selftest_passes() {
    let o = qsc(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
