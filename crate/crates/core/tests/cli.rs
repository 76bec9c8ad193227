//! End-to-end tests of the `abscissa` binary: flag handling, exit codes,
//! file artifacts, and byte-level determinism of everything it writes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abscissa"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn parse_report(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).expect("report file exists");
    serde_json::from_str(&text).expect("report is valid JSON")
}

/// Reports differ only in their timestamp across reruns.
fn strip_timestamp(mut v: Value) -> Value {
    v["timestamp"] = Value::Null;
    v
}

#[test]
fn gen_is_deterministic_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let out = run(&[
            "gen",
            "--family",
            "wintner",
            "--seed",
            "7",
            "--N",
            "1000",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn gen_writes_the_gap_family_with_the_expected_third_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let out = run(&[
        "gen",
        "--family",
        "thm1",
        "--alpha",
        "0.5",
        "--N",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,re,im"));
    let a3 = lines.nth(2).unwrap();
    assert!(a3.starts_with("3,1.7320508075688772e0,"), "got {a3:?}");
}

#[test]
fn forced_minus_signs_match_the_mobius_family_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let forced = dir.path().join("forced.csv");
    let mobius = dir.path().join("mobius.csv");
    let out = run(&[
        "gen",
        "--family",
        "wintner",
        "--force-minus",
        "--N",
        "20000",
        "--out",
        forced.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let out = run(&[
        "gen",
        "--family",
        "mobius",
        "--N",
        "20000",
        "--out",
        mobius.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    assert_eq!(
        std::fs::read(&forced).unwrap(),
        std::fs::read(&mobius).unwrap()
    );
}

#[test]
fn abscissa_round_trip_through_file_input_with_trails() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("zeta.csv");
    let report_path = dir.path().join("report.json");
    let trails = dir.path().join("trail");
    assert_exit(
        &run(&[
            "gen",
            "--family",
            "zeta",
            "--N",
            "4096",
            "--out",
            csv.to_str().unwrap(),
        ]),
        0,
    );
    let out = run(&[
        "abscissa",
        "--input",
        csv.to_str().unwrap(),
        "--which",
        "ca",
        "--report",
        report_path.to_str().unwrap(),
        "--trails",
        trails.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    assert!(out.stdout.is_empty(), "report went to the file, not stdout");

    let report = parse_report(&report_path);
    assert_eq!(report["experiment"], "abscissa");
    assert_eq!(report["pass"], Value::Null);
    let estimates = report["results"]["estimates"].as_array().unwrap();
    assert_eq!(estimates.len(), 2);
    for est in estimates {
        assert_eq!(est["estimate"], serde_json::json!(1.0));
    }
    let keys: Vec<&str> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "experiment",
            "config",
            "results",
            "pass",
            "timestamp",
            "tool_version"
        ]
    );

    let trail = std::fs::read_to_string(dir.path().join("trail.sigma_c.csv")).unwrap();
    assert!(trail.starts_with("x,statistic,ratio\n16,"), "got {trail:?}");
}

#[test]
fn reports_are_deterministic_up_to_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let two = dir.path().join("two.json");
    for path in [&one, &two] {
        let out = run(&[
            "wintner-mc",
            "--trials",
            "3",
            "--N",
            "4096",
            "--seed",
            "5",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    assert_eq!(
        strip_timestamp(parse_report(&one)),
        strip_timestamp(parse_report(&two))
    );
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let serial = dir.path().join("serial.json");
    let parallel = dir.path().join("parallel.json");
    for (path, threads) in [(&serial, "1"), (&parallel, "4")] {
        let out = run(&[
            "bohr-check",
            "--count",
            "12",
            "--degree",
            "6",
            "--radii",
            "0.3,0.9",
            "--threads",
            threads,
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    assert_eq!(
        strip_timestamp(parse_report(&serial)),
        strip_timestamp(parse_report(&parallel))
    );
}

#[test]
fn failing_experiment_exits_one() {
    let out = run(&[
        "thm1-sweep",
        "--alphas",
        "0.5",
        "--N",
        "4096",
        "--tolerance",
        "0.0001",
    ]);
    assert_exit(&out, 1);
    let report: Value =
        serde_json::from_slice(&out.stdout).expect("failing run still writes its report");
    assert_eq!(report["pass"], serde_json::json!(false));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[
            "gen",
            "--family",
            "nope",
            "--N",
            "10",
            "--out",
            "/tmp/x.csv",
        ],
        &[
            "gen",
            "--family",
            "galpha",
            "--N",
            "10",
            "--out",
            "/tmp/x.csv",
        ], // missing alpha
        &[
            "gen",
            "--family",
            "galpha",
            "--alpha",
            "1.5",
            "--N",
            "10",
            "--out",
            "/tmp/x.csv",
        ],
        &["gen", "--family", "zeta", "--out", "/tmp/x.csv"], // missing N
        &["abscissa", "--which", "ca"],                      // no input at all
        &[
            "abscissa", "--family", "zeta", "--N", "4096", "--which", "cx",
        ],
        &["abscissa", "--input", "/nonexistent/path.csv"],
        &["wintner-mc", "--trials", "0", "--N", "4096"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(args);
        assert_exit(&out, 2);
    }

    // both --family and --input present
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    assert_exit(
        &run(&[
            "gen",
            "--family",
            "zeta",
            "--N",
            "256",
            "--out",
            csv.to_str().unwrap(),
        ]),
        0,
    );
    let out = run(&[
        "abscissa",
        "--family",
        "zeta",
        "--N",
        "256",
        "--input",
        csv.to_str().unwrap(),
    ]);
    assert_exit(&out, 2);
}

#[test]
fn degenerate_input_is_a_structured_report_failure() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("zeros.csv");
    let mut text = String::from("n,re,im\n");
    for n in 1..=256 {
        text.push_str(&format!("{n},0.0000000000000000e0,0.0000000000000000e0\n"));
    }
    std::fs::write(&csv, text).unwrap();
    let out = run(&["abscissa", "--input", csv.to_str().unwrap(), "--which", "c"]);
    assert_exit(&out, 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::json!(false));
    assert!(report["results"]["error"].is_string());
}

#[test]
fn shifted_estimates_drop_by_the_shift() {
    // a quick equivariance check through the CLI path itself
    let out = run(&[
        "abscissa", "--family", "zeta", "--N", "1048576", "--which", "c", "--shift", "0.25",
    ]);
    assert_exit(&out, 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let est = report["results"]["estimates"][0]["estimate"]
        .as_f64()
        .unwrap();
    assert!((est - 0.75).abs() <= 0.05, "got {est}");
}
