use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_patch-creep"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_lines() {
    for (args, expected) in [
        (&["--omega", "3"][..], "point 2"),
        (&["--omega", "2"][..], "interval 0 1"),
        (&["--half-integer-n", "0"][..], "open-interval 0 1"),
    ] {
        let out = bin().arg("classify").args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), expected);
    }
}

#[test]
fn negative_omega_is_a_usage_error() {
    let out = bin().args(["classify", "--omega", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("classify").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_forcing_writes_zero_stress() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["solve-finite", "--config"])
        .arg(scenario("zero_forcing.toml"))
        .arg("--output")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("stress.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,t,q"));
    for line in lines {
        assert_eq!(line.rsplit(',').next().unwrap().parse::<f64>().unwrap(), 0.0);
    }
    assert!(dir.path().join("coefficients.csv").exists());
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = bin()
            .args(["case-b", "--config"])
            .arg(scenario("case_b.toml"))
            .arg("--output")
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["stress.csv", "report.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn case_b_reports_the_square_root_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["case-b", "--config"])
        .arg(scenario("case_b.toml"))
        .arg("--output")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let fitted: f64 = report
        .split("\"fitted\": ")
        .nth(1)
        .and_then(|s| s.split([',', '\n']).next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((fitted + 0.5).abs() < 0.05, "{fitted}");
}

#[test]
fn check_mode_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("never");
    let out = bin()
        .args(["case-b", "--check", "--config"])
        .arg(scenario("case_b.toml"))
        .arg("--output")
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
    assert!(!target.exists());
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario("case_b.toml")).unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, text.replace("gamma = 0.026", "gamma = 0.026\nviscosity = 3.0")).unwrap();
    let out = bin().args(["case-b", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("viscosity"));

    let out = bin().args(["case-a", "--config"]).arg(scenario("case_b.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_invariants_exit_with_three() {
    // the reference set misses the N vs N-2 coefficient tolerance
    let out = bin()
        .args(["solve-finite", "--check", "--config"])
        .arg(scenario("reference.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL convergence"));
}
