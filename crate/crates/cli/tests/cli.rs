//! End-to-end tests against the compiled binary: pinned headers and values,
//! byte-identical reruns, and the exit-code contract.

use std::process::{Command, Output};

fn cohsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cohsim(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn csv_column(csv: &str, header: &str, column: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let head = lines.next().expect("header line");
    let idx = head.split(',').position(|c| c == column).expect("column present");
    assert!(head.starts_with(header));
    lines
        .map(|line| line.split(',').nth(idx).unwrap().parse().expect("float cell"))
        .collect()
}

#[test]
fn grover_header_and_initial_row_are_pinned() {
    let csv = stdout(&["grover", "--qubits", "10", "--solutions", "1"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,c_r_closed,c_l1_closed,c_r_sim,c_l1_sim,p_success,c_l1_log"
    );
    let row0: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row0[0], "0");
    assert_eq!(row0[3], "1.0000000000000000e1");
    assert_eq!(row0[4], "1.0230000000000000e3");
    // log2(1023 + 1) = 10.
    assert_eq!(row0[6], "1.0000000000000000e1");
}

#[test]
fn grover_trace_minimum_for_sixteen_solutions() {
    let csv = stdout(&["grover", "--qubits", "10", "--solutions", "16"]);
    let c_r = csv_column(&csv, "k,", "c_r_sim");
    let argmin = c_r
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    assert_eq!(argmin, 6);
}

#[test]
fn grover_reruns_are_byte_identical() {
    let args = ["grover", "--qubits", "8", "--solutions", "4", "--format", "json"];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);
    let parsed: serde_json::Value = serde_json::from_str(&first).expect("valid json");
    assert_eq!(parsed["metadata"]["algorithm"], "grover");
    assert_eq!(parsed["rows"][0]["c_r_sim"], 8.0);
}

#[test]
fn grover_capacity_guard_exits_3() {
    let out = cohsim(&["grover", "--qubits", "30", "--solutions", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn grover_writes_file_when_out_given() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let args = [
        "grover", "--qubits", "6", "--solutions", "1", "--out", path.to_str().unwrap(),
    ];
    let out = cohsim(&args);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&args[..args.len() - 2]));
}

#[test]
fn min_coherence_shape_and_dedup_warning() {
    let out = cohsim(&[
        "min-coherence", "--qubits", "10", "--solutions-list", "1,2,4,8,16,8",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate solution count M=8"));
    let csv = String::from_utf8(out.stdout).unwrap();
    let min_c_r = csv_column(&csv, "M,log2M,min_c_r,min_c_l1", "min_c_r");
    assert_eq!(min_c_r.len(), 5);
    assert!(min_c_r[0] <= 0.02);
    for pair in min_c_r.windows(2) {
        assert!(pair[1] > pair[0]);
    }
}

#[test]
fn min_coherence_parallel_matches_serial() {
    let serial = stdout(&["min-coherence", "--qubits", "9", "--solutions-list", "1,4,16"]);
    let parallel = stdout(&[
        "min-coherence", "--qubits", "9", "--solutions-list", "1,4,16", "--parallel",
    ]);
    assert_eq!(serial, parallel);
}

#[test]
fn dj_constant_and_balanced_runs() {
    let constant: serde_json::Value =
        serde_json::from_str(&stdout(&["dj", "--qubits", "3", "--function", "constant:1"]))
            .unwrap();
    assert_eq!(constant["result"]["verdict"], "constant");
    assert!((constant["result"]["p_zero"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(constant["result"]["stages"][2]["c_r"].as_f64().unwrap().abs() < 1e-12);
    assert!(constant["result"]["stages"][2]["c_l1"].as_f64().unwrap().abs() < 1e-12);

    let balanced: serde_json::Value = serde_json::from_str(&stdout(&[
        "dj", "--qubits", "3", "--function", "balanced:01100101",
    ]))
    .unwrap();
    assert_eq!(balanced["result"]["verdict"], "balanced");
    assert!(balanced["result"]["stages"][2]["c_r"].as_f64().unwrap() > 0.0);

    // 01010101 has exactly four ones, so it passes the balance check.
    let alternating: serde_json::Value = serde_json::from_str(&stdout(&[
        "dj", "--qubits", "3", "--function", "balanced:01010101",
    ]))
    .unwrap();
    assert_eq!(alternating["result"]["verdict"], "balanced");
}

#[test]
fn dj_rejects_bad_tables() {
    let short = cohsim(&["dj", "--qubits", "3", "--function", "balanced:0110"]);
    assert_eq!(short.status.code(), Some(2));

    let unbalanced = cohsim(&["dj", "--qubits", "3", "--function", "balanced:01010111"]);
    assert_eq!(unbalanced.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unbalanced.stderr).contains("not balanced"));
}

#[test]
fn dj_enumerate_reports_extremes() {
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&["dj", "--qubits", "3", "--function", "enumerate"]))
            .unwrap();
    assert_eq!(parsed["result"]["tables_enumerated"], 70);
    assert_eq!(parsed["result"]["max_c_r"], 2.0);
    assert_eq!(parsed["result"]["max_c_l1"].as_f64().unwrap().round(), 3.0);

    let too_big = cohsim(&["dj", "--qubits", "5", "--function", "enumerate"]);
    assert_eq!(too_big.status.code(), Some(3));
}

#[test]
fn qof_exact_period_case() {
    let args = ["qof", "--base", "7", "--modulus", "15", "--t", "8", "--seed", "1"];
    let text = stdout(&args);
    assert_eq!(text, stdout(&args));
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["order"], 4);
    assert!((parsed["stages"][2]["c_r"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!((parsed["stages"][2]["c_l1"].as_f64().unwrap() - 15.0).abs() < 1e-6);
    let support: Vec<u64> = parsed["histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["j"].as_u64().unwrap())
        .collect();
    assert_eq!(support, [0, 64, 128, 192]);
}

#[test]
fn qof_rejects_non_coprime_base() {
    let out = cohsim(&["qof", "--base", "6", "--modulus", "15"]);
    assert_eq!(out.status.code(), Some(2));
    let message = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(message.contains("gcd = 3"), "message: {message}");
    assert!(message.contains("factor"), "message: {message}");
}

#[test]
fn qof_factoring_wrapper() {
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&["qof", "--factor", "15", "--seed", "1"])).unwrap();
    assert_eq!(parsed["factoring"]["factors"][0], 3);
    assert_eq!(parsed["factoring"]["factors"][1], 5);

    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&["qof", "--factor", "21", "--seed", "1"])).unwrap();
    assert_eq!(parsed["factoring"]["factors"][0], 3);
    assert_eq!(parsed["factoring"]["factors"][1], 7);
}

#[test]
fn qof_requires_some_work() {
    let out = cohsim(&["qof"]);
    assert_eq!(out.status.code(), Some(2));
}
