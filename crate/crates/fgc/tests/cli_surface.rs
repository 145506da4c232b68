//! External surface of the `fgc` binary: file formats, report schema,
//! exit codes, and seeded determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fgc-surface-{}-{name}", std::process::id()))
}

#[test]
fn solve_emits_schema_stable_json() {
    let instance = temp("tri.fgc");
    std::fs::write(
        &instance,
        "fgc 1\nn 3\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 0 2 1 U\n",
    )
    .unwrap();
    let out = fgc(&[
        "solve",
        "--algorithm",
        "1k",
        "--input",
        instance.to_str().unwrap(),
        "--with-oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in [
        "instance_digest",
        "algorithm",
        "cost",
        "guarantee",
        "lower_bound",
        "ratio",
        "iterations",
        "elapsed_ms",
        "solution",
    ] {
        assert!(report.get(key).is_some(), "missing key {key}");
    }
    // All-unsafe triangle: cost 3 at guarantee 2, exact ratio 1.
    assert_eq!(report["cost"], "3");
    assert_eq!(report["guarantee"], "2");
    assert_eq!(report["lower_bound"], "3");
    assert_eq!(report["ratio"], "1");
    std::fs::remove_file(instance).unwrap();
}

#[test]
fn exit_codes_cover_usage_and_infeasibility() {
    // Usage errors are exit 1.
    assert_eq!(fgc(&["solve", "--algorithm", "bogus"]).status.code(), Some(1));
    assert_eq!(fgc(&["nonsense"]).status.code(), Some(1));
    // Help succeeds.
    assert_eq!(fgc(&["--help"]).status.code(), Some(0));

    // Infeasible instances are exit 2.
    let instance = temp("bridge.fgc");
    std::fs::write(&instance, "fgc 1\nn 2\np 1 q 1\nedge 0 1 1 U\n").unwrap();
    let solve = fgc(&["solve", "--algorithm", "k1", "--input", instance.to_str().unwrap()]);
    assert_eq!(solve.status.code(), Some(2));
    let oracle = fgc(&["oracle", "--input", instance.to_str().unwrap()]);
    assert_eq!(oracle.status.code(), Some(2));
    std::fs::remove_file(instance).unwrap();
}

#[test]
fn check_verdicts() {
    let instance = temp("check.fgc");
    std::fs::write(
        &instance,
        "fgc 1\nn 3\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 0 2 1 U\n",
    )
    .unwrap();
    let good = temp("good.sol");
    std::fs::write(&good, "0\n1\n2\n").unwrap();
    let out = fgc(&["check", "--input", instance.to_str().unwrap(), "--solution", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "feasible");

    let bad = temp("bad.sol");
    std::fs::write(&bad, "0\n1\n").unwrap();
    let out = fgc(&["check", "--input", instance.to_str().unwrap(), "--solution", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "infeasible");

    for path in [instance, good, bad] {
        std::fs::remove_file(path).unwrap();
    }
}

#[test]
fn bench_reports_are_reproducible() {
    let args = [
        "bench", "--family", "random", "--count", "4", "--seed", "9", "--problem", "fgc",
        "--p", "1", "--q", "1", "--n", "5", "--m", "8",
    ];
    let first = fgc(&args);
    let second = fgc(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "bench output must be byte-identical");
    let text = String::from_utf8_lossy(&first.stdout);
    assert!(text.contains("max_ratio"));
}

#[test]
fn gen_writes_parseable_files() {
    let out_path = temp("gen.fgc");
    let out = fgc(&[
        "gen", "--family", "figure1", "--n", "3", "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("fgc 1\nn 6\n"));
    let solve = fgc(&["solve", "--algorithm", "pq", "--input", out_path.to_str().unwrap()]);
    assert_eq!(solve.status.code(), Some(0));
    std::fs::remove_file(out_path).unwrap();
}

#[test]
fn enumerate_cuts_lists_min_cuts() {
    let instance = temp("cycle.fgc");
    std::fs::write(
        &instance,
        "fgc 1\nn 4\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 2 3 1 U\nedge 3 0 1 U\n",
    )
    .unwrap();
    let out = fgc(&["enumerate-cuts", "--input", instance.to_str().unwrap(), "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["min_cut"], "2");
    assert_eq!(body["count"], 6);
    std::fs::remove_file(instance).unwrap();
}
