use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperglauber"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const EDGE3: &str = "3 1\n0 1 2\n";

#[test]
fn gen_frozen_writes_the_instance() {
    let out = run(&["gen", "frozen", "--q", "2", "--m", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("4 4"));
    assert_eq!(text.lines().count(), 5);
    let report = String::from_utf8(out.stderr).unwrap();
    assert!(report.contains("\"validation\""));
}

#[test]
fn gen_random_is_deterministic() {
    let args = ["gen", "random", "--n", "30", "--m", "7", "--delta", "3", "--edges", "12", "--seed", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("30 12\n"));
}

#[test]
fn gen_blowup_has_blocks_of_size_four() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "3 2\n0 1\n1 2\n");
    let out = run(&["gen", "blowup", "--graph", &g, "--m", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 2"));
    assert!(lines.all(|l| l.split_whitespace().count() == 4));
}

#[test]
fn edge_process_table_is_exact() {
    let v = json_ok(&["bounds", "edge-process", "--m", "3", "--lambda", "1", "--exact"]);
    assert_eq!(v["command"], "bounds edge-process");
    let row = &v["result"][0];
    assert_eq!(row["p_exact"], serde_json::json!(["2/7", "1/7"]));
    assert!((row["p_solve"][0].as_f64().unwrap() - 2.0 / 7.0).abs() < 1e-15);
}

#[test]
fn beta_star_reported() {
    let v = json_ok(&["bounds", "beta-star"]);
    for r in v["result"].as_array().unwrap() {
        assert!((r["beta_star"].as_f64().unwrap() - 0.392729).abs() < 1e-5);
        assert!((r["q_factor"].as_f64().unwrap() - 1.64671).abs() < 1e-4);
    }
}

#[test]
fn stopping_time_tau() {
    let v = json_ok(&[
        "bounds", "tau", "--variant", "stopping-time", "--p", "0.5", "--alpha", "0.5", "--d1", "10",
        "--d2", "2", "--eps", "0.01",
    ]);
    let tau = v["result"]["tau"].as_f64().unwrap();
    assert!((tau - 168.6).abs() < 0.1, "{tau}");
}

#[test]
fn calculator_preconditions_are_enforced() {
    let out = run(&[
        "bounds", "tau", "--variant", "colouring", "--n", "100", "--q", "4", "--delta", "4", "--m", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["bounds", "tau", "--variant", "stopping-time", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_indsets_from_file_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "edge3.txt", EDGE3);
    let v = json_ok(&["count", "indsets", "--input", &f]);
    assert_eq!(v["result"]["profile"]["total"], 7);

    let mut child = bin()
        .args(["count", "indsets", "--input", "-", "--lambda", "1/2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EDGE3.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // 1 + 3/2 + 3/4
    assert_eq!(v["result"]["partition"], "13/4");
}

#[test]
fn tv_on_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "edge3.txt", EDGE3);
    let v = json_ok(&["tv", "--input", &f, "--kind", "indset", "--lambda", "1", "--samples", "1000000"]);
    assert!(v["result"]["tv"].as_f64().unwrap() < 0.02);
    assert_eq!(v["config"]["tv"]["seed"], 0);
}

#[test]
fn sample_ends_in_a_proper_colouring() {
    let dir = tempfile::tempdir().unwrap();
    let frozen = run(&["gen", "frozen", "--q", "2", "--m", "3"]).stdout;
    let f = write(dir.path(), "f.txt", std::str::from_utf8(&frozen).unwrap());
    let v = json_ok(&["sample", "--input", &f, "--kind", "colouring", "--q", "2", "--t", "1000", "--seed", "3"]);
    assert_eq!(v["result"]["feasible"], true);
    assert_eq!(v["result"]["trajectory"]["seed"], 3);
}

#[test]
fn couple_reports_findings() {
    let dir = tempfile::tempdir().unwrap();
    let h = run(&["gen", "random", "--n", "30", "--m", "7", "--delta", "3", "--edges", "12", "--seed", "1"]).stdout;
    let f = write(dir.path(), "h.txt", std::str::from_utf8(&h).unwrap());
    let v = json_ok(&["couple", "--input", &f, "--kind", "indset", "--lambda", "1", "--replicates", "2000", "--seed", "5"]);
    assert_eq!(v["result"]["alpha_below_one_99"], true);
    assert!(v["result"]["alpha_bound"]["rapid_mixing"].as_bool().unwrap());

    let c = run(&["gen", "random", "--n", "24", "--m", "3", "--delta", "2", "--edges", "14", "--seed", "2"]).stdout;
    let g = write(dir.path(), "c.txt", std::str::from_utf8(&c).unwrap());
    let v = json_ok(&["couple", "--input", &g, "--kind", "colouring", "--q", "4", "--replicates", "200"]);
    assert!(v["result"]["stats"]["replicates"] == 200);

    let out = run(&["couple", "--input", &f, "--kind", "indset", "--replicates", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parallelism_does_not_change_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let h = run(&["gen", "random", "--n", "20", "--m", "4", "--delta", "2", "--edges", "10", "--seed", "4"]).stdout;
    let f = write(dir.path(), "h.txt", std::str::from_utf8(&h).unwrap());
    let args = ["couple", "--input", &f, "--kind", "indset", "--replicates", "500", "--seed", "9", "--format", "csv"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("# command=couple config="));
    assert_eq!(text.lines().nth(1), Some("replicate,w,t,distance,censored"));
    assert_eq!(text.lines().count(), 502);
}

#[test]
fn malformed_input_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "2 1\n0 5\n");
    let out = run(&["count", "indsets", "--input", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&["count", "indsets", "--input", "/nonexistent/file"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["bounds", "beta-star", "--method", "series", "--output", "sub/beta.json"])
        .env("HYPERGLAUBER_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("sub/beta.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"][0]["method"], "series");
}

#[test]
fn appendix_counts_agree() {
    let v = json_ok(&["count", "weak-colourings", "--m", "3", "--q", "3"]);
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["result"]["counts"][0]["weak"], "6");
    let v = json_ok(&["count", "edge-covers", "--m", "4", "--format", "json"]);
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn gambler_at_the_horizon() {
    let v = json_ok(&[
        "gambler", "--p", "0.5", "--alpha", "0.5", "--d2", "2", "--d1", "10", "--eps", "0.1", "--replicates", "2000",
    ]);
    assert_eq!(v["result"]["horizon"], 122);
    assert_eq!(v["result"]["below_threshold"], true);
}

#[test]
fn coalesce_and_drift_run() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "edge3.txt", EDGE3);
    let v = json_ok(&["coalesce", "--input", &f, "--kind", "indset", "--replicates", "50", "--seed", "1"]);
    assert_eq!(v["result"]["coalesced"], 50);

    let frozen = run(&["gen", "frozen", "--q", "3", "--m", "3"]).stdout;
    let g = write(dir.path(), "frozen.txt", std::str::from_utf8(&frozen).unwrap());
    let v = json_ok(&["drift", "--input", &g, "--kind", "colouring", "--q", "4", "--pairs", "20", "--policy", "uniform"]);
    assert_eq!(v["result"]["pairs"], 20);
    assert!(v["result"]["bound"].is_string());
}
