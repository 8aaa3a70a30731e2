use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gammaring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammaring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    path.display().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn certified_law_exits_zero() {
    let out = gammaring(&[
        "check-law",
        "--model",
        "hz",
        "--kind",
        "diff",
        "--law",
        "[1,-1]",
        "--kmax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["format"], "gammaring.report/1");
    assert_eq!(r["summary"]["details"]["verdict"], "pass");
    assert_eq!(r["config"]["kmax"], 3);
    assert_eq!(r["results"].as_array().unwrap().len(), 4);
}

#[test]
fn failing_law_exits_one_with_report() {
    let out = gammaring(&[
        "check-law",
        "--model",
        "hz",
        "--kind",
        "diff",
        "--law",
        "[1,1]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["summary"]["status"], "fail");
    assert_eq!(r["results"][0]["status"], "fail");
    assert!(r["results"][0]["check"]
        .as_str()
        .unwrap()
        .starts_with("condition 1"));
}

#[test]
fn monoid_has_no_sum_laws() {
    let spec = format!("monoid:{}", data("m2.toml"));
    let out = gammaring(&[
        "find-laws",
        "--model",
        &spec,
        "--kind",
        "sum",
        "--kmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["details"]["count"], 0);
    assert_eq!(r["summary"]["details"]["laws"], Value::Array(vec![]));
}

#[test]
fn pi0_of_infinite_model_is_unsupported() {
    let out = gammaring(&["pi0", "--model", "hz"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn usage_errors_exit_two() {
    let out = gammaring(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = gammaring(&[
        "check-law",
        "--model",
        "hz",
        "--kind",
        "diff",
        "--law",
        "[1,x]",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = gammaring(&["pi0", "--model", "hmod:zero"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gammaring(&["check-ring", "--model", "hz", "--mode", "quick"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_map_evaluates_targets() {
    let out = gammaring(&[
        "build-map",
        "--model",
        "hmod:6",
        "--law",
        "[1,-1]",
        "--variant",
        "hz",
        "--eval",
        "[4,-7]",
        "--eval",
        "[1]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let values = &report(&out)["summary"]["details"]["values"];
    assert_eq!(values[0]["value"]["text"], "[4,5]");
    assert_eq!(values[1]["value"]["text"], "[1]");

    let out = gammaring(&[
        "build-map",
        "--model",
        "hz",
        "--law",
        "[1,1]",
        "--variant",
        "hz",
        "--eval",
        "[1]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["summary"]["details"]["certified"], false);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = gammaring(&[
            "verify-map",
            "--model",
            "end:3",
            "--law",
            "[1,-1]",
            "--variant",
            "hz",
            "--bound",
            "2",
            "--maxlen",
            "2",
            "--trials",
            "5",
            "--seed",
            "17",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["config"]["seed"], 17);
    assert_eq!(r["summary"]["violations"], 0);
}

#[test]
fn classify_and_pi0_reports() {
    let out = gammaring(&["classify", "--model", "hmod:5", "--kmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let details = &report(&out)["summary"]["details"];
    assert_eq!(details["laws"].as_array().unwrap().len(), 1);
    assert_eq!(details["bijection"]["maps"], 1);

    let out = gammaring(&["pi0", "--model", "end:2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let details = &report(&out)["summary"]["details"];
    assert_eq!(
        details["invariant_factors"],
        serde_json::json!([2, 2, 2, 2])
    );
    assert_eq!(details["classes"].as_array().unwrap().len(), 16);
}

#[test]
fn axiom_report_for_monoid_file() {
    let spec = format!("monoid:{}", data("m2.toml"));
    let out = gammaring(&["check-ring", "--model", &spec, "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let checks: Vec<&str> = r["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["check"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"associativity"));
    assert_eq!(r["config"]["nmax"], 2);
}
