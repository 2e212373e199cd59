use std::fs;
use std::process::{Command, Output};

fn trigspline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigspline"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn nodes_prints_one_per_line() {
    let out = trigspline(&["nodes", "--nodes", "3", "--indicator", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1.0471975512\n3.14159265359\n5.23598775598\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(trigspline(&[]).status.code(), Some(2));
    assert_eq!(trigspline(&["eval", "--paper-data"]).status.code(), Some(2));
    let both = trigspline(&[
        "sample",
        "--paper-data",
        "--blocks",
        "5",
        "--tolerance",
        "1e-3",
    ]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    for args in [
        &["nodes", "--nodes", "8"][..],
        &["nodes", "--nodes", "9", "--indicator", "2"],
        &["eval", "--paper-data", "--r", "0", "--t", "1"],
        &["eval", "--paper-data", "--kind", "v4", "--t", "1"],
        &["eval", "--paper-data", "--deriv", "-1", "--t", "1"],
        &["sample", "--paper-data", "--blocks", "0"],
        &["eval", "--t", "1"],
    ] {
        let out = trigspline(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stderr(&out).contains("error:"), "{args:?}");
    }
}

#[test]
fn derivative_beyond_smoothness_is_rejected() {
    let out = trigspline(&[
        "eval",
        "--paper-data",
        "--r",
        "2",
        "--blocks",
        "50",
        "--deriv",
        "2",
        "--t",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("derivative order exceeds r−1"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn eval_reproduces_samples() {
    let out = trigspline(&[
        "eval",
        "--paper-data",
        "--indicator",
        "1",
        "--r",
        "2",
        "--blocks",
        "500",
        "--t",
        "0.3490658503988659",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    let (t, v) = line.trim().split_once(',').unwrap();
    assert_eq!(t, "0.349065850399");
    assert!((v.parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
    assert!(stderr(&out).contains("M = 500"));
}

#[test]
fn fit_then_eval_from_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    fs::write(&input, "index,value\n1,0.5\n2,-1\n3,2.25\n4,0\n5,1\n").unwrap();
    let desc = dir.path().join("s.json");
    let fit = trigspline(&[
        "fit",
        "--input",
        input.to_str().unwrap(),
        "--kind",
        "v1",
        "--r",
        "4",
        "--out",
        desc.to_str().unwrap(),
    ]);
    assert_eq!(fit.status.code(), Some(0), "{}", stderr(&fit));
    let direct = trigspline(&[
        "eval",
        "--input",
        input.to_str().unwrap(),
        "--kind",
        "v1",
        "--r",
        "4",
        "--t",
        "0.1",
        "2",
        "--deriv",
        "1",
    ]);
    let loaded = trigspline(&[
        "eval",
        "--descriptor",
        desc.to_str().unwrap(),
        "--t",
        "0.1",
        "2",
        "--deriv",
        "1",
    ]);
    assert_eq!(loaded.status.code(), Some(0));
    assert_eq!(stdout(&direct), stdout(&loaded));
    assert_eq!(stdout(&loaded).lines().count(), 2);
}

#[test]
fn compare_even_order_pair() {
    let out = trigspline(&[
        "compare",
        "--paper-data",
        "--kind",
        "v2",
        "--r",
        "4",
        "--against",
        "v3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text
        .trim()
        .strip_prefix("max_deviation,")
        .unwrap()
        .parse()
        .unwrap();
    assert!(value <= 1e-9, "{value}");
}

#[test]
fn compare_against_cubic_oracle() {
    let out = trigspline(&[
        "compare",
        "--paper-data",
        "--r",
        "3",
        "--blocks",
        "200",
        "--against",
        "cubic",
    ]);
    let value: f64 = stdout(&out)
        .trim()
        .strip_prefix("max_deviation,")
        .unwrap()
        .parse()
        .unwrap();
    assert!(value <= 1e-7, "{value}");
    let wrong_grid = trigspline(&[
        "compare",
        "--paper-data",
        "--r",
        "3",
        "--blocks",
        "20",
        "--against",
        "quadratic",
    ]);
    assert_eq!(wrong_grid.status.code(), Some(1));
}

#[test]
fn sample_is_deterministic_and_complete() {
    let args = [
        "sample",
        "--paper-data",
        "--kind",
        "v1",
        "--r",
        "2",
        "--blocks",
        "300",
    ];
    let first = trigspline(&args);
    let second = trigspline(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value"));
    assert_eq!(text.lines().count(), 1025);
    assert!(lines.all(|l| l.split(',').count() == 2));
}

#[test]
fn sample_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = trigspline(&[
        "sample",
        "--paper-data",
        "--count",
        "16",
        "--blocks",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 17);
}
