use std::process::{Command, Output};

use serde_json::Value;

fn period_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_period-lab"))
        .args(args)
        .env_remove("PERIOD_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn success_paths_exit_zero() {
    let o = period_lab(&["ord", "--field", "2", "--poly", "x^5+x^4+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ord(x^5+x^4+1) over F_2 = 21\n");
    assert!(o.stderr.is_empty());
    let o = period_lab(&[
        "period-set",
        "--field",
        "2",
        "--degree",
        "4",
        "--method",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P(4, F_2) [bruteforce] = {1,2,3,4,5,6,7,15}"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ord", "--field", "6", "--poly", "x"][..],
        &["ord", "--field", "2"],
        &["ord", "--field", "2", "--poly", "x+"],
        &["ord", "--field", "2", "--poly", "x", "--unknown"],
        &["period-set", "--field", "2", "--degree", "two"],
        &[
            "period-set",
            "--field",
            "2",
            "--degree",
            "2",
            "--method",
            "guess",
        ],
        &["simulate", "--field", "3", "--rec", "1,x", "--init", "0,1"],
        &[
            "ring",
            "period",
            "--components",
            "2,3",
            "--rec",
            "1,1",
            "--init",
            "(0,0),(1,1)",
        ],
        &["--format", "yaml", "verify"],
        &[],
    ] {
        let o = period_lab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_one_with_one_line() {
    for args in [
        &["ord", "--field", "2", "--poly", "0"][..],
        &["simulate", "--field", "2", "--rec", "0,1", "--init", "0,1"],
        &["simulate", "--field", "2", "--rec", "1,1", "--init", "0"],
        &[
            "minpoly", "--field", "2", "--terms", "1,0,1", "--bound", "2",
        ],
        &[
            "period-set",
            "--field",
            "2",
            "--degree",
            "5",
            "--method",
            "closed",
        ],
        &[
            "--budget",
            "8",
            "period-set",
            "--field",
            "2",
            "--degree",
            "4",
            "--method",
            "bruteforce",
        ],
        &["algebra", "--p", "4", "--n", "3"],
    ] {
        let o = period_lab(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_period-lab"))
        .args([
            "period-set",
            "--field",
            "2",
            "--degree",
            "4",
            "--method",
            "bruteforce",
        ])
        .env("PERIOD_LAB_BUDGET", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = period_lab(&[
        "period-set",
        "--field",
        "2",
        "--degree",
        "4",
        "--method",
        "bruteforce",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_is_deterministic_and_schema_tagged() {
    let args = [
        "--format",
        "json",
        "period-set",
        "--field",
        "9",
        "--degree",
        "3",
        "--method",
        "all",
    ];
    let a = period_lab(&args);
    let b = period_lab(
        &["--jobs", "1"]
            .iter()
            .chain(args.iter())
            .copied()
            .collect::<Vec<_>>(),
    );
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "period-lab/1");
    for key in ["q", "p", "e", "k", "method", "period_set"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(
        (v["q"].as_u64(), v["p"].as_u64(), v["e"].as_u64()),
        (Some(9), Some(3), Some(2))
    );
}

#[test]
fn printed_polynomials_reparse() {
    for (field, poly) in [
        ("5", "x^2-x-1"),
        ("2^2", "x^3+[0,1]*x+[1,1]"),
        ("7", "3*x^4 - 2*x + 6"),
    ] {
        let o = period_lab(&["--format", "json", "ord", "--field", field, "--poly", poly]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let printed = v["poly"].as_str().unwrap();
        let again = period_lab(&[
            "--format", "json", "ord", "--field", field, "--poly", printed,
        ]);
        let w: Value = serde_json::from_slice(&again.stdout).unwrap();
        assert_eq!(w["poly"], v["poly"]);
        assert_eq!(w["order"], v["order"]);
    }
}

#[test]
fn csv_has_header() {
    let o = period_lab(&[
        "--format",
        "csv",
        "ring",
        "period-set",
        "--components",
        "2,3,5",
        "--degree",
        "1",
    ]);
    assert_eq!(stdout(&o), "period\n1\n2\n4\n");
    let o = period_lab(&[
        "--format", "csv", "ord", "--field", "2", "--poly", "x^2+x+1",
    ]);
    assert_eq!(
        stdout(&o),
        "field,poly,method,order\n2,x^2+x+1,pipeline,3\n"
    );
}

#[test]
fn verify_passes_and_reports_each_check() {
    let o = period_lab(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS P(4,F_2) = {1,2,3,4,5,6,7,15}"));
    assert!(!text.contains("FAIL"));
    let o = period_lab(&["--format", "json", "verify", "--scope", "rings"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["topic"] == "product rings"));
}

#[test]
fn progress_goes_to_stderr_only() {
    let o = period_lab(&[
        "--format",
        "json",
        "period-set",
        "--field",
        "2",
        "--degree",
        "17",
        "--method",
        "bruteforce",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("progress:"));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["period_set"].as_array().unwrap().last().unwrap(), 131071);
}

#[test]
fn help_is_available_per_subcommand() {
    for sub in [
        "ord",
        "simulate",
        "minpoly",
        "period-set",
        "ring",
        "algebra",
        "verify",
    ] {
        let o = period_lab(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage"), "{sub}");
    }
}
