//! `kratzer` — exact spectrum, symmetry and algebra verification from the
//! command line.
//!
//! Subcommands: `spectrum`, `oracle`, `family`, `symmetry`, `algebra`,
//! `verify-all`. Every subcommand renders a text report by default and a
//! machine-readable JSON report with `--json`; `--out PATH` writes the report
//! to a file. Exit codes: 0 all checks passed, 1 a verification failed,
//! 2 invalid input or usage.

use clap::{Args, Parser, Subcommand};
use kratzer_core::family;
use kratzer_core::liealg;
use kratzer_core::oracle;
use kratzer_core::rational::Rational;
use kratzer_core::report::{CheckRecord, CheckStatus};
use kratzer_core::spectrum::{self, Branch, TiltMode};
use kratzer_core::symmetry;
use kratzer_core::verify::{self, FaultInjection, VerifyOptions};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "kratzer", version, about = "Exact analysis of u'' + (C/x² + D/x + Ê)u = 0: su(1,1) spectra, isospectral family, Lie point symmetries, extended algebra, and a finite-difference oracle")]
struct Cli {
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to a file (in the selected format)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Problem file supplying defaults for C, D, n-range, branch, ps, oracle
    #[arg(long, global = true, value_name = "FILE")]
    problem: Option<PathBuf>,

    /// Seed for the randomized identity checks (fixed default)
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete levels Ê = −D²/[(2n+1) ± √(1−4C)]² on a chosen branch
    Spectrum(SpectrumArgs),
    /// Finite-difference eigenvalue check of the plus-branch closed forms
    Oracle(OracleArgs),
    /// Isospectral transformed equations s = x^p, optionally zero-mode checked
    Family(FamilyArgs),
    /// Exact Laurent-ansatz symmetry solutions and comparison cases
    Symmetry(SymmetryArgs),
    /// The extended X/Y/Z commutation table and non-closure certificates
    Algebra(AlgebraArgs),
    /// Run every verification check (A1–A8) and report pass/fail
    VerifyAll(VerifyAllArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Coefficient C of 1/x² (rational, e.g. -3/4)
    #[arg(long = "C", value_name = "RAT", allow_hyphen_values = true)]
    c: Option<String>,
    /// Coefficient D of 1/x (rational, > 0)
    #[arg(long = "D", value_name = "RAT", allow_hyphen_values = true)]
    d: Option<String>,
    /// Highest level n to compute
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Square-root branch: plus (principal) or minus (enhanced symmetry)
    #[arg(long)]
    branch: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "C", value_name = "RAT", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long = "D", value_name = "RAT", allow_hyphen_values = true)]
    d: Option<String>,
    /// Number of levels to verify
    #[arg(long)]
    k: Option<usize>,
    /// Interior grid points of the coarse grid (the fine grid doubles it)
    #[arg(long)]
    m: Option<usize>,
    /// Relative tolerance each level must meet
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long = "C", value_name = "RAT", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long = "D", value_name = "RAT", allow_hyphen_values = true)]
    d: Option<String>,
    /// Level n of the generating quantization condition
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    branch: Option<String>,
    /// Substitution exponents p (repeat or comma-separate)
    #[arg(long = "p", value_name = "RAT", value_delimiter = ',', allow_hyphen_values = true)]
    ps: Vec<String>,
    /// Discretize each member and verify the zero mode numerically
    #[arg(long)]
    check_zero_mode: bool,
    /// Interior points for the zero-mode grids
    #[arg(long, default_value_t = 40_000)]
    grid_m: usize,
}

#[derive(Args)]
struct SymmetryArgs {
    /// Laurent-ansatz degree N
    #[arg(long = "N")]
    n: Option<u32>,
    /// Also report the non-principal enhancement energies
    #[arg(long)]
    all_roots: bool,
    /// Run the harmonic-oscillator ansatz scan (negative powers up to this)
    #[arg(long)]
    oscillator_neg: Option<u32>,
    /// Positive powers for the oscillator scan
    #[arg(long, default_value_t = 0)]
    oscillator_pos: u32,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Verify all five families for 0 ≤ m, n ≤ max-n
    #[arg(long = "max-n", default_value_t = 10)]
    max_n: u32,
    /// The D in X = 2D∂ₓ (the literal table has D = 1/2)
    #[arg(long = "D", value_name = "RAT", allow_hyphen_values = true, default_value = "1/2")]
    d: String,
}

#[derive(Args)]
struct VerifyAllArgs {
    /// Skip the floating-point oracle checks (A3, A8 zero modes)
    #[arg(long)]
    skip_numeric: bool,
    /// Deliberately corrupt one checker (su11-sign | algebra-sign | spectrum-offset)
    #[arg(long, value_name = "NAME")]
    inject_fault: Option<String>,
    /// Coarse oracle grid size
    #[arg(long, default_value_t = 20_000)]
    oracle_m: usize,
}

/// Defaults file: rationals as "p/q" or integer strings.
#[derive(Debug, Default, Deserialize)]
struct ProblemFile {
    #[serde(rename = "C")]
    c: Option<String>,
    #[serde(rename = "D")]
    d: Option<String>,
    n_range: Option<[u32; 2]>,
    branch: Option<String>,
    ps: Option<Vec<String>>,
    #[serde(rename = "ansatz_N_max")]
    ansatz_n_max: Option<u32>,
    oracle: Option<OracleSection>,
}

#[derive(Debug, Deserialize)]
struct OracleSection {
    m: Option<usize>,
    tol: Option<f64>,
}

/// Input errors exit with status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, InputError> {
    Rational::from_str(s).map_err(|e| InputError(format!("invalid {what}: {e}")))
}

#[derive(Serialize)]
struct RunReport {
    tool: String,
    version: String,
    command: String,
    timestamp: String,
    input: serde_json::Value,
    checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    payload: serde_json::Value,
    exit_status: u8,
}

impl RunReport {
    fn new(command: &str, input: serde_json::Value) -> Self {
        RunReport {
            tool: "kratzer".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            timestamp: timestamp(),
            input,
            checks: Vec::new(),
            payload: serde_json::Value::Null,
            exit_status: EXIT_OK,
        }
    }

    fn finalize(&mut self) {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            self.exit_status = EXIT_CHECK_FAILED;
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "kratzer {} — {}\n",
            self.version, self.command
        ));
        if !self.payload.is_null() {
            out.push_str(&render_payload(&self.command, &self.payload));
        }
        for c in &self.checks {
            if c.details.is_empty() {
                out.push_str(&format!("[{}] {}\n", c.status, c.name));
            } else {
                out.push_str(&format!("[{}] {} — {}\n", c.status, c.name, c.details));
            }
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count();
        if !self.checks.is_empty() {
            out.push_str(&format!(
                "{} checks, {} failed\n",
                self.checks.len(),
                failed
            ));
        }
        out
    }
}

fn timestamp() -> String {
    // seconds since the epoch; excluded from byte-identity comparisons
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => d.as_secs().to_string(),
        Err(_) => "0".to_string(),
    }
}

fn render_payload(command: &str, payload: &serde_json::Value) -> String {
    let mut out = String::new();
    match command {
        "spectrum" => {
            if let Some(rows) = payload["levels"].as_array() {
                out.push_str(&format!(
                    "{:>4}  {:>8}  {:>22}  {:>14}  note\n",
                    "n", "branch", "E_hat", "numeric"
                ));
                for row in rows {
                    let numeric = row["E_hat_f64"]
                        .as_f64()
                        .map(|v| format!("{v:.10}"))
                        .unwrap_or_else(|| "-".to_string());
                    out.push_str(&format!(
                        "{:>4}  {:>8}  {:>22}  {:>14}  {}\n",
                        row["n"].as_u64().unwrap_or(0),
                        row["branch"].as_str().unwrap_or("-"),
                        row["E_hat_exact"].as_str().unwrap_or("-"),
                        numeric,
                        row["note"].as_str().unwrap_or(""),
                    ));
                }
            }
            if let Some(t) = payload["tilt_tanh_theta"].as_str() {
                out.push_str(&format!("tanh θ (discrete tilt at lowest valid level): {t}\n"));
            }
        }
        "oracle" => {
            if let Some(rows) = payload["levels"].as_array() {
                out.push_str(&format!(
                    "{:>4}  {:>14}  {:>16}  {:>12}  {:>8}\n",
                    "n", "closed form", "numeric", "rel error", "ratio"
                ));
                for row in rows {
                    out.push_str(&format!(
                        "{:>4}  {:>14}  {:>16.10}  {:>12.3e}  {:>8.2}\n",
                        row["n"].as_u64().unwrap_or(0),
                        row["closed_form"].as_str().unwrap_or("-"),
                        row["numeric"].as_f64().unwrap_or(f64::NAN),
                        row["rel_error"].as_f64().unwrap_or(f64::NAN),
                        row["refinement_ratio"].as_f64().unwrap_or(f64::NAN),
                    ));
                }
                out.push_str(&format!("converged: {}\n", payload["converged"]));
            }
        }
        _ => {
            out.push_str(&serde_json::to_string_pretty(payload).unwrap_or_default());
            out.push('\n');
        }
    }
    out
}

fn emit(cli: &Cli, report: &RunReport) -> Result<(), InputError> {
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.render_text()
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
            println!("report written to {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn load_problem(cli: &Cli) -> Result<ProblemFile, InputError> {
    match &cli.problem {
        None => Ok(ProblemFile::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| InputError(format!("invalid problem file: {e}")))
        }
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, InputError> {
    value.ok_or_else(|| InputError(format!("missing required input {flag} (flag or problem file)")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    let problem = load_problem(cli)?;
    let mut report = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, &problem)?,
        Command::Oracle(args) => cmd_oracle(args, &problem)?,
        Command::Family(args) => cmd_family(args, &problem)?,
        Command::Symmetry(args) => cmd_symmetry(args, &problem)?,
        Command::Algebra(args) => cmd_algebra(args)?,
        Command::VerifyAll(args) => cmd_verify_all(args, cli.seed)?,
    };
    report.finalize();
    emit(cli, &report)?;
    Ok(report.exit_status)
}

fn cmd_spectrum(args: &SpectrumArgs, problem: &ProblemFile) -> Result<RunReport, InputError> {
    let c_str = required(args.c.clone().or_else(|| problem.c.clone()), "--C")?;
    let d_str = required(args.d.clone().or_else(|| problem.d.clone()), "--D")?;
    let c = parse_rational(&c_str, "--C")?;
    let d = parse_rational(&d_str, "--D")?;
    let n_max = required(
        args.n_max.or_else(|| problem.n_range.map(|r| r[1])),
        "--n-max",
    )?;
    let branch_str = required(args.branch.clone().or_else(|| problem.branch.clone()), "--branch")?;
    let branch = Branch::from_str(&branch_str).map_err(InputError)?;

    let mut report = RunReport::new(
        "spectrum",
        json!({"C": c.to_string(), "D": d.to_string(), "n_max": n_max, "branch": branch_str}),
    );
    // validate the (C, D) gate once; per-level branch failures become notes
    spectrum::discrete_energy(&c, &d, n_max, Branch::Plus).map_err(InputError::from)?;

    let mut rows = Vec::new();
    for n in 0..=n_max {
        match spectrum::discrete_energy(&c, &d, n, branch) {
            Ok(level) => {
                rows.push(json!({
                    "n": n,
                    "branch": branch.to_string(),
                    "E_hat_exact": level.e_hat.to_string(),
                    "E_hat_f64": level.e_hat.to_f64(),
                    "level": level,
                    "note": "",
                }));
            }
            Err(e @ spectrum::SpectrumError::BranchDenominator(_)) => {
                rows.push(json!({
                    "n": n,
                    "branch": branch.to_string(),
                    "E_hat_exact": "-",
                    "E_hat_f64": serde_json::Value::Null,
                    "note": format!("rejected: {e}"),
                }));
            }
            Err(e) => return Err(InputError::from(e)),
        }
    }
    // tilt of the lowest valid level, when any
    let tilt = rows
        .iter()
        .find(|r| r["note"] == "")
        .and_then(|r| r["level"]["E_hat"]["num"].as_str().map(str::to_string))
        .and_then(|num| {
            let den = rows
                .iter()
                .find(|r| r["note"] == "")
                .and_then(|r| r["level"]["E_hat"]["den"].as_str().map(str::to_string))?;
            let e: Rational = format!("{num}/{den}").parse().ok()?;
            let b = &Rational::from_int(4) * &e;
            spectrum::tilt_theta(&b, TiltMode::Discrete)
                .ok()
                .map(|t| t.to_string())
        });
    report.payload = json!({
        "levels": rows,
        "tilt_tanh_theta": tilt,
        "paper_discrepancies": spectrum::PAPER_DISCREPANCIES,
    });
    Ok(report)
}

fn cmd_oracle(args: &OracleArgs, problem: &ProblemFile) -> Result<RunReport, InputError> {
    let c_str = required(args.c.clone().or_else(|| problem.c.clone()), "--C")?;
    let d_str = required(args.d.clone().or_else(|| problem.d.clone()), "--D")?;
    let c = parse_rational(&c_str, "--C")?;
    let d = parse_rational(&d_str, "--D")?;
    let k = required(
        args.k
            .or_else(|| problem.n_range.map(|r| r[1] as usize + 1)),
        "--k",
    )?;
    let m = args
        .m
        .or_else(|| problem.oracle.as_ref().and_then(|o| o.m))
        .unwrap_or(20_000);
    let tol = args
        .tol
        .or_else(|| problem.oracle.as_ref().and_then(|o| o.tol))
        .unwrap_or(1e-3);
    if !(tol > 0.0) {
        return Err(InputError("--tol must be positive".to_string()));
    }

    let mut report = RunReport::new(
        "oracle",
        json!({"C": c.to_string(), "D": d.to_string(), "k": k, "m": m, "tol": tol}),
    );
    let opts = oracle::OracleOptions { m, ..Default::default() };
    let spectrum_report =
        oracle::solve_radial_with(&c, &d, k, opts).map_err(InputError::from)?;
    for lvl in &spectrum_report.levels {
        report.checks.push(CheckRecord::of(
            format!("oracle level n={} within {tol:.1e} relative", lvl.n),
            lvl.rel_error <= tol,
            format!("rel error {:.3e}", lvl.rel_error),
        ));
    }
    report.payload = serde_json::to_value(&spectrum_report).expect("report serializes");
    Ok(report)
}

fn cmd_family(args: &FamilyArgs, problem: &ProblemFile) -> Result<RunReport, InputError> {
    let c_str = required(args.c.clone().or_else(|| problem.c.clone()), "--C")?;
    let d_str = required(args.d.clone().or_else(|| problem.d.clone()), "--D")?;
    let c = parse_rational(&c_str, "--C")?;
    let d = parse_rational(&d_str, "--D")?;
    let n = required(args.n.or_else(|| problem.n_range.map(|r| r[0])), "--n")?;
    let branch_str = required(args.branch.clone().or_else(|| problem.branch.clone()), "--branch")?;
    let branch = Branch::from_str(&branch_str).map_err(InputError)?;
    let ps_strs = if args.ps.is_empty() {
        problem.ps.clone().unwrap_or_default()
    } else {
        args.ps.clone()
    };
    if ps_strs.is_empty() {
        return Err(InputError("missing --p (or ps in the problem file)".into()));
    }
    let ps: Vec<Rational> = ps_strs
        .iter()
        .map(|s| parse_rational(s, "--p"))
        .collect::<Result<_, _>>()?;

    let mut report = RunReport::new(
        "family",
        json!({"C": c.to_string(), "D": d.to_string(), "n": n, "branch": branch_str,
               "ps": ps_strs, "check_zero_mode": args.check_zero_mode}),
    );
    let members = family::family_members(&c, &d, n, branch, &ps).map_err(InputError::from)?;
    if args.check_zero_mode {
        for gp in &members {
            let grid = oracle::suggested_zero_mode_grid(gp, &d, n, args.grid_m)
                .map_err(InputError::from)?;
            let threshold = if gp.p == Rational::one() { 1e-4 } else { 1e-2 };
            match oracle::zero_mode_residual(gp, &grid) {
                Ok(res) => report.checks.push(CheckRecord::of(
                    format!("zero mode p={} residual < {threshold:.0e}", gp.p),
                    res.abs() < threshold,
                    format!("residual {res:.3e}"),
                )),
                Err(e) => report
                    .checks
                    .push(CheckRecord::fail(format!("zero mode p={}", gp.p), e.to_string())),
            }
        }
    }
    report.payload = json!({
        "members": members,
        "paper_discrepancies": spectrum::PAPER_DISCREPANCIES,
    });
    Ok(report)
}

fn cmd_symmetry(args: &SymmetryArgs, problem: &ProblemFile) -> Result<RunReport, InputError> {
    let n = required(args.n.or(problem.ansatz_n_max), "--N")?;
    if n == 0 {
        return Err(InputError("--N must be ≥ 1".into()));
    }
    let mut report = RunReport::new(
        "symmetry",
        json!({"N": n, "all_roots": args.all_roots,
               "oscillator": args.oscillator_neg.map(|neg| (neg, args.oscillator_pos))}),
    );
    let solutions = symmetry::ansatz_solve(n);
    if solutions.is_empty() {
        report
            .checks
            .push(CheckRecord::fail(format!("ansatz N={n}"), "no nontrivial solution"));
    } else {
        report.checks.push(CheckRecord::pass(format!(
            "ansatz N={n}: {} enhancement energ{}",
            solutions.len(),
            if solutions.len() == 1 { "y" } else { "ies" }
        )));
    }
    let principal = solutions.first().cloned();
    let osc = args
        .oscillator_neg
        .map(|neg| symmetry::oscillator_beta_solve(neg, args.oscillator_pos));
    if let Some(scan) = &osc {
        report.checks.push(CheckRecord::of(
            "oscillator Laurent ansatz admits no solution",
            scan.is_none(),
            format!("unexpected solution: {scan:?}"),
        ));
    }
    report.payload = json!({
        "principal": principal,
        "all_solutions": if args.all_roots { Some(&solutions) } else { None },
        "oscillator_scan": osc.map(|s| serde_json::to_value(s).unwrap()),
        "paper_discrepancies": spectrum::PAPER_DISCREPANCIES,
    });
    Ok(report)
}

fn cmd_algebra(args: &AlgebraArgs) -> Result<RunReport, InputError> {
    let d = parse_rational(&args.d, "--D")?;
    let mut report = RunReport::new(
        "algebra",
        json!({"D": d.to_string(), "max_n": args.max_n}),
    );
    let table = liealg::verify_relations(&d, args.max_n);
    let failed: Vec<&CheckRecord> = table.failed();
    report.checks.push(CheckRecord::of(
        format!(
            "commutation table D={d}, 0 ≤ m,n ≤ {} ({} identities)",
            args.max_n,
            table.checks.len()
        ),
        failed.is_empty(),
        format!(
            "failing: {:?}",
            failed.iter().map(|c| &c.name).collect::<Vec<_>>()
        ),
    ));
    let basis = liealg::make_generators(&d, args.max_n);
    let zz = liealg::vf_commutator(&liealg::z_field(2), &liealg::z_field(1));
    let span = liealg::span_membership(&zz, &basis);
    report.checks.push(CheckRecord::of(
        "[Z-2, Z-1] stays outside the span (e^{2x} obstruction)",
        !span.in_span && span.offending_term.is_some(),
        "unexpected span membership".to_string(),
    ));
    report.payload = json!({
        "table": table,
        "non_closure": span,
    });
    Ok(report)
}

fn cmd_verify_all(args: &VerifyAllArgs, seed: u64) -> Result<RunReport, InputError> {
    let fault = args
        .inject_fault
        .as_deref()
        .map(FaultInjection::from_str)
        .transpose()
        .map_err(InputError)?;
    let opts = VerifyOptions {
        skip_numeric: args.skip_numeric,
        seed,
        fault,
        oracle_m: args.oracle_m,
    };
    let mut report = RunReport::new(
        "verify-all",
        json!({"skip_numeric": args.skip_numeric, "inject_fault": args.inject_fault, "seed": seed,
               "oracle_m": args.oracle_m}),
    );
    report.checks = verify::run_all(&opts);
    report.payload = json!({
        "paper_discrepancies": spectrum::PAPER_DISCREPANCIES,
    });
    Ok(report)
}
