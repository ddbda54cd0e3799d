use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigsturm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn nonnegative_exits_zero() {
    let o = run(&["prove", "7 + 6*cos(x) + 5*cos(2x) + 4*cos(3x) + 3*cos(4x) + 5*cos(5x)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict:     nonnegative"));
}

#[test]
fn negative_exits_one() {
    let o = run(&["prove", "1/2 + cos(x)", "--xhi", "4pi/5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("negative at y ="));
}

#[test]
fn parse_error_exits_three_with_caret() {
    let o = run(&["prove", "1 + cos(x) +* sin(x)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains('^'), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["prove"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn structured_report_verifies() {
    let o = run(&["prove", "7/5 + cos(x) + sin(x) + 2*sin(2x) + sin(3x)", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json output");
    assert_eq!(v["schema"], "trigsturm.report/v1");
    assert_eq!(v["proof"]["certificate"]["root_boxes"].as_array().map(Vec::len), Some(2));

    let dir = std::env::temp_dir().join(format!("trigsturm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, &o.stdout).unwrap();
    let ok = run(&["verify", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    let mut bad = v.clone();
    bad["proof"]["certificate"]["hi"] = "1/2".into();
    let tampered = dir.join("bad.json");
    std::fs::write(&tampered, bad.to_string()).unwrap();
    assert_eq!(run(&["verify", tampered.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn expand_prints_both_parts() {
    let o = run(&["expand", "sin(x) + sin(2x)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("B(y) = 0"), "{s}");
    assert!(s.contains("A(y) = 2*y + 1"), "{s}");
}

#[test]
fn param_interval() {
    let o = run(&["param", "2*sin(x) + sin(2x) + a*sin(3x)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("1.8660254"), "{}", stdout(&o));
    let o = run(&["param", "-1 + cos(x) + a*cos(2x)"]);
    assert_eq!(o.status.code(), Some(1));
}
