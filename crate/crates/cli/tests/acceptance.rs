//! The acceptance suite: one criterion per test, one printed pass/fail line
//! each (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! A1 su(1,1) identities · A2 operator decomposition · A3 oracle spectra ·
//! A4 ansatz vs printed solutions and the general law · A5 branch consistency ·
//! A6 vector-field verification · A7 extended algebra and non-closure ·
//! A8 isospectral family · A9 CLI end-to-end.

use kratzer_core::report::{CheckRecord, CheckStatus};
use kratzer_core::verify::{self, VerifyOptions};
use std::process::Command;
use std::time::Instant;

fn assert_all(name: &str, records: &[CheckRecord], budget_secs: f64, elapsed: f64) {
    let failed: Vec<&CheckRecord> = records
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .collect();
    let ok = failed.is_empty() && elapsed <= budget_secs;
    println!(
        "[{}] {name} — {} checks, {} failed, {elapsed:.2}s (budget {budget_secs}s)",
        if ok { "PASS" } else { "FAIL" },
        records.len(),
        failed.len(),
    );
    for f in &failed {
        println!("        failing: {} — {}", f.name, f.details);
    }
    assert!(failed.is_empty(), "{name}: {} checks failed", failed.len());
    assert!(
        elapsed <= budget_secs,
        "{name}: {elapsed:.2}s exceeded the {budget_secs}s budget"
    );
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn a1_su11_operator_identities() {
    let t = Instant::now();
    let records = verify::check_a1(None);
    assert_all("A1 su(1,1) identities (α ∈ {0, 1, −15/16}, both realizations)", &records, 1.0, t.elapsed().as_secs_f64());
}

#[test]
fn a2_operator_decomposition() {
    let t = Instant::now();
    let records = verify::check_a2(opts().seed);
    assert_all("A2 operator decomposition, 5 random rational triples", &records, 1.0, t.elapsed().as_secs_f64());
}

#[test]
fn a3_spectrum_vs_numeric_oracle() {
    let t = Instant::now();
    let records = verify::check_a3(&opts());
    assert_all("A3 oracle spectra: C=0 and C=−3/4 at 1e−3 relative, ratio ∈ [3,5]", &records, 60.0, t.elapsed().as_secs_f64());
}

#[test]
fn a4_ansatz_solver_vs_printed_solutions() {
    let t = Instant::now();
    let records = verify::check_a4();
    assert_all("A4 ansatz N=1,2,3 exact + N=2 flag + general law N ≤ 8", &records, 10.0, t.elapsed().as_secs_f64());
}

#[test]
fn a5_branch_consistency() {
    let t = Instant::now();
    let records = verify::check_a5(None);
    assert_all("A5 ansatz energies = minus-branch levels, N = 1..8, exact", &records, 10.0, t.elapsed().as_secs_f64());
}

#[test]
fn a6_vector_field_verification() {
    let t = Instant::now();
    let records = verify::check_a6();
    assert_all("A6 determining residuals: verified fields zero, perturbed nonzero", &records, 10.0, t.elapsed().as_secs_f64());
}

#[test]
fn a7_extended_algebra() {
    let t = Instant::now();
    let records = verify::check_a7(None);
    assert_all("A7 commutation table max_n=10, span obstruction, non-closure", &records, 10.0, t.elapsed().as_secs_f64());
}

#[test]
fn a8_isospectral_family() {
    let t = Instant::now();
    let records = verify::check_a8(&opts());
    assert_all("A8 transform p=3 exact, p=1/2 round-trip, zero modes", &records, 60.0, t.elapsed().as_secs_f64());
}

#[test]
fn a9_cli_end_to_end() {
    let t = Instant::now();
    let bin = env!("CARGO_BIN_EXE_kratzer");
    let mut records = Vec::new();

    // correct build: exit 0 with a JSON report carrying every check family
    let out = Command::new(bin)
        .args(["--json", "verify-all", "--skip-numeric"])
        .output()
        .expect("binary runs");
    let json_ok = serde_json::from_slice::<serde_json::Value>(&out.stdout)
        .map(|v| {
            let names: Vec<String> = v["checks"]
                .as_array()
                .unwrap_or(&Vec::new())
                .iter()
                .map(|c| c["name"].as_str().unwrap_or("").to_string())
                .collect();
            ["A1", "A2", "A4", "A5", "A6", "A7", "A8"]
                .iter()
                .all(|p| names.iter().any(|n| n.starts_with(p)))
        })
        .unwrap_or(false);
    records.push(CheckRecord::of(
        "verify-all exits 0 with a complete JSON report",
        out.status.code() == Some(0) && json_ok,
        format!("exit {:?}", out.status.code()),
    ));

    // injected fault: exit 1, failing check named
    let out = Command::new(bin)
        .args(["--json", "verify-all", "--skip-numeric", "--inject-fault", "algebra-sign"])
        .output()
        .expect("binary runs");
    let names_failed = serde_json::from_slice::<serde_json::Value>(&out.stdout)
        .map(|v| {
            v["checks"]
                .as_array()
                .unwrap_or(&Vec::new())
                .iter()
                .any(|c| c["status"] == "fail" && c["name"].as_str().unwrap_or("").starts_with("A7"))
        })
        .unwrap_or(false);
    records.push(CheckRecord::of(
        "injected fault exits 1 naming the failed check",
        out.status.code() == Some(1) && names_failed,
        format!("exit {:?}", out.status.code()),
    ));

    // malformed inputs: exit 2
    for args in [
        vec!["spectrum", "--C", "abc", "--D", "1", "--n-max", "0", "--branch", "plus"],
        vec!["spectrum", "--C", "1", "--D", "1", "--n-max", "0", "--branch", "plus"],
        vec!["verify-all", "--inject-fault", "nonsense"],
        vec!["unknown-subcommand"],
    ] {
        let out = Command::new(bin).args(&args).output().expect("binary runs");
        records.push(CheckRecord::of(
            format!("malformed input exits 2: {args:?}"),
            out.status.code() == Some(2),
            format!("exit {:?}", out.status.code()),
        ));
    }
    assert_all("A9 CLI end-to-end exit codes and reports", &records, 30.0, t.elapsed().as_secs_f64());
}
