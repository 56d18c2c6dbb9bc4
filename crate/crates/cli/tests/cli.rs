//! Command-line behavior: exit codes, input validation, output stability.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn construct_succeeds_and_echoes_determinants() {
    let out = run(&["construct", "--a", "2,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "construct");
    assert_eq!(report["verdict"], "rank2-witness");
    assert_eq!(
        report["result"]["determinants"]["d12"],
        serde_json::json!(2)
    );
    assert_eq!(
        report["result"]["determinants"]["d23"],
        serde_json::json!(3)
    );
    assert_eq!(
        report["result"]["determinants"]["d13"],
        serde_json::json!(5)
    );
    assert_eq!(
        report["result"]["witness"]["kernel_rank"],
        serde_json::json!(0)
    );
}

#[test]
fn construct_rejects_zero_exponent() {
    let out = run(&["construct", "--a", "0,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero"));
}

#[test]
fn construct_rejects_wrong_arity_and_bad_integers() {
    assert_eq!(run(&["construct", "--a", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--a", "1,1,1,1"]).status.code(), Some(2));
    let out = run(&["construct", "--a", "1e3,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an integer"));
    assert_eq!(run(&["construct", "--a", "1.5,1,1"]).status.code(), Some(2));
}

#[test]
fn construct_handles_huge_exponents() {
    let huge = "123456789012345678901234567890";
    let out = run(&["construct", "--a", &format!("{huge},1,1")]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["determinants"]["d12"].to_string(), huge);
}

#[test]
fn check_all_ones_holds_for_n5() {
    let out = run(&["check", "--n", "5", "--a", "1,1,1,1,1,1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "condition-holds");
    assert_eq!(report["result"]["quadruples"].as_array().unwrap().len(), 5);
}

#[test]
fn check_refuses_n3_and_points_to_construct() {
    let out = run(&["check", "--n", "3", "--a", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("construct"));
}

#[test]
fn check_rejects_zero_entries_and_bad_length() {
    assert_eq!(
        run(&["check", "--n", "4", "--a", "1,1,0,1,1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "--n", "4", "--a", "1,1,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn search_not_found_exits_one() {
    let out = run(&[
        "search",
        "--n",
        "4",
        "--a",
        "1,1,1,-1,1,-1",
        "--bound",
        "1",
        "--require-rank2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "no-witness-in-box");
}

#[test]
fn search_rejects_zero_bound() {
    assert_eq!(
        run(&["search", "--n", "3", "--a", "1,1,1", "--bound", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_output_is_stable_across_runs() {
    let args = [
        "search",
        "--n",
        "3",
        "--a",
        "1,2,1",
        "--bound",
        "1",
        "--require-rank2",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn search_accepts_zero_entries_in_a() {
    // membership tolerates zeros in a; only the all-zero vector is invalid
    let out = run(&["search", "--n", "3", "--a", "1,0,1", "--bound", "1"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let all_zero = run(&["search", "--n", "3", "--a", "0,0,0", "--bound", "1"]);
    assert_eq!(all_zero.status.code(), Some(2));
}

#[test]
fn search_progress_stream_is_json_lines() {
    let out = run(&[
        "search",
        "--n",
        "3",
        "--a",
        "1,1,1",
        "--bound",
        "1",
        "--require-rank2",
        "--progress",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    let mut kinds = Vec::new();
    for line in stderr.lines().filter(|l| !l.is_empty()) {
        let v: serde_json::Value =
            serde_json::from_str(line).unwrap_or_else(|e| panic!("bad progress line {line}: {e}"));
        kinds.push(v["type"].as_str().unwrap().to_string());
    }
    assert_eq!(kinds.first().map(String::as_str), Some("search-start"));
    assert!(kinds.iter().skip(1).all(|k| k == "search-progress"));
}

#[test]
fn search_triples_probe_reports_nothing_for_n3() {
    let out = run(&[
        "search",
        "--n",
        "3",
        "--a",
        "1,1,1",
        "--bound",
        "1",
        "--triples",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "no-rank3-triple-in-box");
}

#[test]
fn verify_round_trips_construct_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let construct = run(&["construct", "--a", "-7,4,9"]);
    assert_eq!(construct.status.code(), Some(0));
    std::fs::write(&path, &construct.stdout).unwrap();

    let verify = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
    assert_eq!(stdout_json(&verify)["verdict"], "verified");
}

#[test]
fn verify_names_the_corrupted_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let construct = run(&["construct", "--a", "1,1,1"]);
    let mut report: serde_json::Value = serde_json::from_slice(&construct.stdout).unwrap();
    report["result"]["witness"]["l"] = serde_json::json!(3);
    std::fs::write(&path, serde_json::to_string(&report).unwrap()).unwrap();

    let verify = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1));
    let out = stdout_json(&verify);
    assert_eq!(out["verdict"], "mismatch");
    let failed: Vec<&str> = out["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == serde_json::Value::Bool(false))
        .map(|c| c["field"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["l"]);
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{{nope").unwrap();
    assert_eq!(
        run(&["verify", garbage.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let no_witness = dir.path().join("empty.json");
    std::fs::write(&no_witness, r#"{"result": {}}"#).unwrap();
    assert_eq!(
        run(&["verify", no_witness.to_str().unwrap()]).status.code(),
        Some(2)
    );

    assert_eq!(
        run(&["verify", "/nonexistent/w.json"]).status.code(),
        Some(2)
    );

    // floats smuggled into an exponent array are rejected, not rounded
    let float_exps = dir.path().join("float.json");
    let construct = run(&["construct", "--a", "1,1,1"]);
    let mut report: serde_json::Value = serde_json::from_slice(&construct.stdout).unwrap();
    report["result"]["witness"]["l"] = serde_json::json!(1.5);
    std::fs::write(&float_exps, serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(
        run(&["verify", float_exps.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn selftest_rejects_zero_trials() {
    assert_eq!(run(&["selftest", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn text_format_is_human_readable() {
    let out = run(&["construct", "--a", "1,1,1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("alpha1 = x2 x3"));
    assert!(text.contains("verdict: rank2-witness"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--n", "4"]).status.code(), Some(2));
}
