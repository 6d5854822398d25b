use std::path::PathBuf;
use std::process::{Command, Output};

fn mfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfk")).args(args).output().expect("binary runs")
}

fn sessions() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("mfk-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn sample_session_runs() {
    let file = sessions().join("basics.mfk");
    let out = mfk(&["run", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "mfk-report/1");
    assert_eq!(v["passed"], true);
}

#[test]
fn echo_is_a_fixed_point() {
    let file = sessions().join("basics.mfk");
    let first = mfk(&["echo", file.to_str().unwrap()]);
    let again = scratch("echo.mfk", &String::from_utf8(first.stdout.clone()).unwrap());
    let second = mfk(&["echo", again.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.mfk", "ring R vars x,y\nmodule M R^2 rels [[x, y], [x]]\n");
    let out = mfk(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));
    assert_eq!(mfk(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn failed_records_are_counted() {
    use mfk::report::{Record, Report};
    let record = |index, verdict| Record { index, input: String::new(), outputs: serde_json::Value::Null, verdict, error: None, elapsed_ms: None };
    let r = Report::new("additivity", 0, "degrevlex", vec![record(0, true), record(1, false)]);
    assert!(!r.all_passed());
    assert_eq!((r.passed, r.failed), (1, 1));
    assert!(r.to_text().contains("[FAIL] #1"));
}

#[test]
fn suite_reports_are_reproducible() {
    let run = || mfk(&["verify", "homotopy", "--seed", "9", "--count", "4", "--format", "json"]).stdout;
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["instances"][3]["index"], 3);
}
