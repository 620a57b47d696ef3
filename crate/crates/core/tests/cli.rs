use std::fs;
use std::process::{Command, Output};

use signed_sumset::harness::CSV_COLUMNS;

fn sumsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumsets"))
        .args(args)
        .env_remove("SUMSETS_BUDGET")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn jsonl(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn eval_reports_closed_forms_and_oracles() {
    let out = sumsets(&["eval", "Z3xZ3", "4", "2", "--oracle", "--format", "jsonl"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let lines = jsonl(&out);
    assert_eq!(lines[0]["type"], "header");
    assert_eq!(lines[0]["schema"], 1);
    let row = lines.iter().find(|l| l["type"] == "result").unwrap();
    assert_eq!(row["rho_formula"], 7);
    assert_eq!(row["u_pm"], 9);
    assert_eq!(row["conjecture_value"], 8);
    assert_eq!(row["rho_oracle"], 7);
    assert_eq!(row["rho_pm_oracle"], 8);
    assert_eq!(lines.last().unwrap()["type"], "summary");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&sumsets(&["verify", "no-such-check"])), 2);
    assert_eq!(code(&sumsets(&["eval", "Z0xQ", "1", "2"])), 2);
    assert_eq!(code(&sumsets(&["eval", "Z5", "9", "2"])), 2);
    assert_eq!(code(&sumsets(&["scan", "-g", "Z5", "--h", "x..y"])), 2);
}

#[test]
fn unwritable_output_exits_3() {
    let out = sumsets(&[
        "eval",
        "Z5",
        "2",
        "2",
        "--out",
        "/nonexistent-dir/report.jsonl",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("/nonexistent-dir/report.jsonl"));
}

#[test]
fn budget_from_environment_skips_oracle() {
    let out = Command::new(env!("CARGO_BIN_EXE_sumsets"))
        .args(["eval", "Z9", "4", "2", "--oracle", "--format", "jsonl"])
        .env("SUMSETS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let row = jsonl(&out)
        .into_iter()
        .find(|l| l["type"] == "result")
        .unwrap();
    assert_eq!(row["rho_oracle"], "skipped(budget)");
    // the closed forms are still reported
    assert_eq!(row["rho_formula"], 7);
}

#[test]
fn scan_with_budget_records_skips_without_failing() {
    let out = sumsets(&[
        "scan", "-g", "Z4xZ4", "--m", "6..8", "--budget", "100", "--format", "jsonl",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows: Vec<_> = jsonl(&out)
        .into_iter()
        .filter(|l| l["type"] == "result")
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["rho_pm_oracle"] == "skipped(budget)"));
}

#[test]
fn cache_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache = cache.to_str().unwrap();
    let args = [
        "scan",
        "-g",
        "Z3xZ3,Z10",
        "--m",
        "1..6",
        "--format",
        "jsonl",
        "--cache",
        cache,
    ];
    let first = sumsets(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let journal = fs::read_to_string(cache).unwrap();
    assert!(journal.lines().count() >= 12);
    let second = sumsets(&args);
    assert_eq!(first.stdout, second.stdout);
    // nothing new was appended on the rerun
    assert_eq!(fs::read_to_string(cache).unwrap(), journal);
}

#[test]
fn corrupt_cache_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    assert_eq!(
        code(&sumsets(&[
            "eval", "Z7", "3", "2", "--oracle", "--cache", cache_s
        ])),
        0
    );
    let mut text = fs::read_to_string(&cache).unwrap();
    text.push_str("{\"group\": \"Z7\", \"m\": 3\n");
    fs::write(&cache, text).unwrap();
    let out = sumsets(&["eval", "Z7", "3", "2", "--oracle", "--cache", cache_s]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn csv_has_fixed_header() {
    let out = sumsets(&["scan", "-g", "Z6", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(lines.count(), 6);
}

#[test]
fn empty_m_range_is_not_an_error() {
    let out = sumsets(&["scan", "-g", "Z5^2", "--m", "9..3", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let lines = jsonl(&out);
    assert!(lines.iter().all(|l| l["type"] != "result"));
    assert_eq!(lines.last().unwrap()["type"], "summary");
}

#[test]
fn order_pattern_expands_to_every_group() {
    let out = sumsets(&["scan", "-g", "order:16", "--m", "3..3", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let groups: Vec<_> = jsonl(&out)
        .into_iter()
        .filter(|l| l["type"] == "result")
        .map(|l| l["group"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(groups.len(), 5);
}

#[test]
fn probe_reports_an_upper_bound() {
    let out = sumsets(&[
        "probe", "Z5^2", "6", "2", "--trials", "500", "--seed", "7", "--format", "jsonl",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let row = jsonl(&out)
        .into_iter()
        .find(|l| l["type"] == "result")
        .unwrap();
    let v = row["probe_upper_bound"].as_u64().unwrap();
    assert!((15..=25).contains(&v));
    assert_eq!(row["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn strict_gap_counterexample_is_reported() {
    // {x, -x} inside a cyclic factor: |3_±A| = 4 = plain minimum
    let out = sumsets(&[
        "verify",
        "strict-gap",
        "--p",
        "5",
        "--m",
        "2..2",
        "--h-max",
        "3",
        "--format",
        "jsonl",
    ]);
    assert_eq!(code(&out), 1);
    let findings: Vec<_> = jsonl(&out)
        .into_iter()
        .filter(|l| l["type"] == "finding")
        .collect();
    assert_eq!(findings.len(), 1);
    assert_eq!(findings[0]["check"], "strict-gap");
    assert_eq!(findings[0]["verdict"], "refuted");
    assert_eq!(findings[0]["h"], 3);
}
