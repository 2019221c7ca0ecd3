//! End-to-end checks of the `pants` binary: exit codes, output schemas, and
//! byte-level reproducibility.

use std::process::{Command, Output};

fn pants(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(args)
        .output()
        .expect("failed to launch pants binary")
}

fn pants_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(args)
        .env(key, value)
        .output()
        .expect("failed to launch pants binary")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_value(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout_of(out).trim()).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited with a code")
}

#[test]
fn eval_rogers_at_one() {
    let out = pants(&["eval", "--rogers", "1"]);
    assert_eq!(code(&out), 0);
    let v = json_value(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert_eq!(v["op"], "rogers");
}

#[test]
fn eval_eta_dominates_phi_through_the_cli() {
    let phi = json_value(&pants(&["eval", "--phi-x", "0.5,0.5,0.5"]))["value"]
        .as_f64()
        .unwrap();
    let eta = json_value(&pants(&["eval", "--eta", "0.5,0.5"]))["value"]
        .as_f64()
        .unwrap();
    assert!(eta >= phi);
    assert!((phi - 5.850_194_336_333_929).abs() < 1e-10);
}

#[test]
fn eval_domain_violations_exit_2() {
    for args in [
        vec!["eval", "--phi-x", "1.2,0.5,0.5"],
        vec!["eval", "--phi-x", "0.5,0.5"],
        vec!["eval", "--rogers", "-0.5"],
        vec!["eval", "--lasso", "0.0,0.5"],
        vec!["eval", "--phi-lengths", "0,1,2"],
        vec!["eval", "--eta", "0.5,abc"],
    ] {
        let out = pants(&args);
        assert_eq!(code(&out), 2, "args {args:?}");
        assert!(!out.stderr.is_empty(), "diagnostic expected for {args:?}");
    }
    // Exactly one evaluation target.
    let out = pants(&["eval", "--rogers", "0.5", "--eta", "0.5,0.5"]);
    assert_eq!(code(&out), 2);
    let out = pants(&["eval"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_limit_mode_permits_boundary() {
    let strict = pants(&["eval", "--phi-x", "0.5,0.5,1.0"]);
    assert_eq!(code(&strict), 2);
    let limit = pants(&["eval", "--phi-x", "0.5,0.5,1.0", "--limit-mode"]);
    assert_eq!(code(&limit), 0);
    let v = json_value(&limit)["value"].as_f64().unwrap();
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn eval_extended_mode_agrees_with_standard() {
    let s = json_value(&pants(&["eval", "--rogers", "0.73"]))["value"]
        .as_f64()
        .unwrap();
    let e = json_value(&pants(&["eval", "--rogers", "0.73", "--mode", "extended"]))["value"]
        .as_f64()
        .unwrap();
    assert!((s - e).abs() < 1e-12);
}

#[test]
fn verify_diag_bound_passes_and_exits_zero() {
    let out = pants(&["verify", "--suite", "diag-bound", "--grid", "200"]);
    assert_eq!(code(&out), 0);
    let v = json_value(&out);
    assert_eq!(v["suite"], "diag-bound");
    assert_eq!(v["pass"], true);
    assert_eq!(v["points"].as_u64().unwrap(), 600);
    assert!(v["worst_margin"].as_f64().unwrap() > 0.0);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_bad_flags_exit_2() {
    let out = pants(&["verify", "--suite", "diag-bound", "--grid", "1"]);
    assert_eq!(code(&out), 2);
    let out = pants(&["verify", "--suite", "diag-bound", "--min", "0.9", "--max", "0.1"]);
    assert_eq!(code(&out), 2);
    let out = pants(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_seeded_random_is_byte_identical() {
    let args = [
        "verify",
        "--suite",
        "eta-dominates",
        "--grid",
        "16",
        "--sampling",
        "random",
        "--seed",
        "7",
    ];
    let a = pants(&args);
    let b = pants(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "same flags and seed must be byte-identical");
    // And independent of the worker count.
    let c = pants_env(&args, "PANTS_NUM_THREADS", "1");
    assert_eq!(a.stdout, c.stdout, "thread count must not change output");
}

#[test]
fn torus_enum_cusped_trace_six() {
    let out = pants(&[
        "torus", "enum", "--cusped", "--max-trace", "6", "--branch", "minus",
    ]);
    assert_eq!(code(&out), 0);
    let lines: Vec<serde_json::Value> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    let traces: Vec<f64> = lines.iter().map(|l| l["trace"].as_f64().unwrap()).collect();
    assert_eq!(traces, vec![3.0, 3.0, 3.0, 6.0, 6.0, 6.0]);
    for l in &lines {
        for key in ["p", "q", "trace", "length"] {
            assert!(l.get(key).is_some(), "missing {key}");
        }
        assert!(l.get("eta").is_none(), "cusped mode has no eta column");
    }
}

#[test]
fn torus_enum_geodesic_carries_eta() {
    let out = pants(&[
        "torus",
        "enum",
        "--boundary-length",
        "2",
        "--alpha-length",
        "2",
        "--max-denominator",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let lines: Vec<serde_json::Value> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 8);
    for l in &lines {
        assert!(l["eta"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn torus_mcshane_monotone_and_bounded() {
    let small = json_value(&pants(&[
        "torus", "mcshane", "--cusped", "--max-denominator", "10",
    ]));
    let large = json_value(&pants(&[
        "torus", "mcshane", "--cusped", "--max-denominator", "100",
    ]));
    let (s, l) = (
        small["value"].as_f64().unwrap(),
        large["value"].as_f64().unwrap(),
    );
    assert!(s < l && l < 0.5);
    assert!(large["term_count"].as_u64().unwrap() > small["term_count"].as_u64().unwrap());
}

#[test]
fn torus_domain_errors_exit_2() {
    // McShane on a geodesic-boundary torus.
    let out = pants(&[
        "torus",
        "mcshane",
        "--boundary-length",
        "2",
        "--alpha-length",
        "2",
        "--max-denominator",
        "5",
    ]);
    assert_eq!(code(&out), 2);
    // Inadmissible shape (discriminant < 0).
    let out = pants(&[
        "torus",
        "enum",
        "--boundary-length",
        "30",
        "--alpha-length",
        "0.5",
        "--max-trace",
        "100",
    ]);
    assert_eq!(code(&out), 2);
    // sum-eta at a cusp.
    let out = pants(&["torus", "sum-eta", "--cusped", "--max-trace", "100"]);
    assert_eq!(code(&out), 2);
    // Missing cutoff.
    let out = pants(&["torus", "enum", "--cusped"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn torus_sum_eta_stabilizes() {
    let run = |cutoff: &str| {
        json_value(&pants(&[
            "torus",
            "sum-eta",
            "--boundary-length",
            "2",
            "--alpha-length",
            "2",
            "--branch",
            "plus",
            "--max-trace",
            cutoff,
        ]))["value"]
            .as_f64()
            .unwrap()
    };
    let a = run("1e6");
    let b = run("1e8");
    assert!((a - b).abs() < 1e-6, "sum not stabilized: {a} vs {b}");
    // Branch choice does not move the sum.
    let minus = json_value(&pants(&[
        "torus",
        "sum-eta",
        "--boundary-length",
        "2",
        "--alpha-length",
        "2",
        "--branch",
        "minus",
        "--max-trace",
        "1e6",
    ]))["value"]
        .as_f64()
        .unwrap();
    assert!((a - minus).abs() < 1e-10);
}

#[test]
fn count_reports_bound_floor_budget() {
    let out = pants(&["count", "--genus", "2", "--length", "6"]);
    assert_eq!(code(&out), 0);
    let v = json_value(&out);
    assert!((v["bound"].as_f64().unwrap() - 33.039_383_935_889_303).abs() < 1e-10);
    assert!((v["floor"].as_f64().unwrap() - 2.389_779_281_657_469_3).abs() < 1e-12);
    assert!((v["budget"].as_f64().unwrap() - 78.956_835_208_714_869).abs() < 1e-10);

    assert_eq!(code(&pants(&["count", "--genus", "1", "--length", "6"])), 2);
    assert_eq!(code(&pants(&["count", "--genus", "2", "--length", "0"])), 2);
}

#[test]
fn csv_and_human_formats() {
    let out = pants(&["count", "--genus", "2", "--length", "6", "--format", "csv"]);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "genus,length,bound,floor,budget");
    let row = lines.next().unwrap();
    assert!(row.starts_with("2,"), "row {row}");
    assert_eq!(row.split(',').count(), 5);

    let out = pants(&["eval", "--rogers", "0.5", "--format", "human"]);
    assert!(stdout_of(&out).contains("rogers[reflection-series](0.5)"));

    let out = pants(&[
        "torus", "enum", "--cusped", "--max-trace", "6", "--format", "csv",
    ]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().next().unwrap(), "p,q,trace,length");
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn json_floats_have_17_digit_form() {
    let out = pants(&["eval", "--rogers", "0.5"]);
    let v = json_value(&out);
    // pi^2/12 to within the standard-mode contract.
    assert!((v["value"].as_f64().unwrap() - 0.822_467_033_424_113_2).abs() < 1e-13);
    // Format shape: d.dddddddddddddddde[+-]?d+ (16 fractional digits).
    let text = stdout_of(&out);
    let tail = text.split("\"value\":").nth(1).unwrap().trim_end();
    let mantissa = tail.trim_end_matches('}').split('e').next().unwrap();
    assert_eq!(
        mantissa.trim_start_matches('-').split('.').nth(1).unwrap().len(),
        16,
        "expected 16 fractional digits in {tail}"
    );
}
