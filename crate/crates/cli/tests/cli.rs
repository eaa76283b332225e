//! End-to-end exercises of the `kratzer` binary: exit codes, JSON shape,
//! determinism, fault injection, problem-file defaults.

use std::process::{Command, Output};

fn kratzer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kratzer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn spectrum_plus_branch_levels() {
    let out = kratzer(&["--json", "spectrum", "--C", "0", "--D", "1", "--n-max", "2", "--branch", "plus"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rows = v["payload"]["levels"].as_array().unwrap();
    let energies: Vec<&str> = rows.iter().map(|r| r["E_hat_exact"].as_str().unwrap()).collect();
    assert_eq!(energies, vec!["-1/4", "-1/16", "-1/36"]);
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn spectrum_rejects_complex_root_with_exit_2() {
    let out = kratzer(&["spectrum", "--C", "1", "--D", "1", "--n-max", "0", "--branch", "plus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative"));
}

#[test]
fn spectrum_minus_branch_flags_invalid_rows() {
    let out = kratzer(&["--json", "spectrum", "--C", "-3/4", "--D", "1", "--n-max", "1", "--branch", "minus"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["payload"]["levels"].as_array().unwrap();
    assert!(rows[0]["note"].as_str().unwrap().contains("rejected"));
    assert_eq!(rows[1]["E_hat_exact"], "-1");
}

#[test]
fn malformed_rational_is_usage_error() {
    let out = kratzer(&["spectrum", "--C", "abc", "--D", "1", "--n-max", "0", "--branch", "plus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kratzer(&["spectrum", "--C", "1/0", "--D", "1", "--n-max", "0", "--branch", "plus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kratzer(&["spectrum", "--C", "0", "--D", "1", "--branch", "plus"]);
    assert_eq!(out.status.code(), Some(2)); // missing --n-max
    let out = kratzer(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symmetry_reports_principal_solution_and_notes() {
    let out = kratzer(&["--json", "symmetry", "--N", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["principal"]["C"], "-15/4");
    assert_eq!(v["payload"]["principal"]["E_over_D2"], "-1/9");
    assert!(v["payload"]["paper_discrepancies"].as_array().unwrap().len() >= 4);
}

#[test]
fn algebra_table_passes() {
    let out = kratzer(&["--json", "algebra", "--max-n", "6", "--D", "1/2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["payload"]["non_closure"]["in_span"], false);
}

#[test]
fn verify_all_skip_numeric_passes_and_is_deterministic() {
    let args = ["--json", "verify-all", "--skip-numeric"];
    let out1 = kratzer(&args);
    let out2 = kratzer(&args);
    assert!(out1.status.success());
    let mut v1 = stdout_json(&out1);
    let mut v2 = stdout_json(&out2);
    // byte-identical modulo the timestamp field
    v1["timestamp"] = serde_json::Value::Null;
    v2["timestamp"] = serde_json::Value::Null;
    assert_eq!(
        serde_json::to_vec(&v1).unwrap(),
        serde_json::to_vec(&v2).unwrap()
    );
    // every criterion family shows up
    let names: Vec<String> = v1["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    for prefix in ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"] {
        assert!(
            names.iter().any(|n| n.starts_with(prefix)),
            "missing {prefix} in {names:?}"
        );
    }
}

#[test]
fn verify_all_fault_injection_exits_1_and_names_the_check() {
    let out = kratzer(&["--json", "verify-all", "--skip-numeric", "--inject-fault", "algebra-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().any(|n| n.starts_with("A7")), "failing: {failing:?}");
    let details = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .unwrap()["details"]
        .as_str()
        .unwrap();
    assert!(details.contains("fault-injected"), "details: {details}");

    let out = kratzer(&["--json", "verify-all", "--skip-numeric", "--inject-fault", "su11-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kratzer(&["verify-all", "--inject-fault", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = kratzer(&[
        "--json",
        "--out",
        path.to_str().unwrap(),
        "verify-all",
        "--skip-numeric",
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["command"], "verify-all");
}

#[test]
fn problem_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    std::fs::write(
        &path,
        r#"{"C": "-3/4", "D": "1", "n_range": [0, 2], "branch": "plus",
            "ps": ["3", "1/2"], "ansatz_N_max": 2, "oracle": {"m": 4000, "tol": 0.001}}"#,
    )
    .unwrap();
    let out = kratzer(&["--json", "--problem", path.to_str().unwrap(), "spectrum"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["levels"].as_array().unwrap().len(), 3);
    assert_eq!(v["payload"]["levels"][0]["E_hat_exact"], "-1/9");

    // flags override the file
    let out = kratzer(&["--json", "--problem", path.to_str().unwrap(), "symmetry", "--N", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["principal"]["N"], 1);

    // malformed problem file is a usage error
    std::fs::write(&path, "{not json").unwrap();
    let out = kratzer(&["--problem", path.to_str().unwrap(), "symmetry", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_round_trip_through_cli() {
    let out = kratzer(&["--json", "family", "--C", "0", "--D", "1", "--n", "0", "--branch", "plus", "--p", "3,1/2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let members = v["payload"]["members"].as_array().unwrap();
    assert_eq!(members.len(), 2);
    assert_eq!(members[0]["p"], "3");
    assert_eq!(members[0]["inv_square"], "-35/4");
    assert_eq!(members[1]["p"], "1/2");
}

#[test]
fn oracle_cli_small_grid() {
    let out = kratzer(&["--json", "oracle", "--C", "0", "--D", "1", "--k", "1", "--m", "4000", "--tol", "0.001"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["checks"][0]["status"], "pass");
}
