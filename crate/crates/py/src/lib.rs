//! Python bindings: the symbolic ring, differential operators, and the main
//! analysis entry points. Report-like results come back as JSON strings so the
//! Python side can `json.loads` them; exact scalars travel as strings.

use kratzer_core::diffop::{self, Realization};
use kratzer_core::exppoly::ExpPoly;
use kratzer_core::family;
use kratzer_core::liealg;
use kratzer_core::oracle;
use kratzer_core::rational::Rational;
use kratzer_core::spectrum::{self, Branch};
use kratzer_core::symmetry;
use kratzer_core::verify::{self, VerifyOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::str::FromStr;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(s: &str) -> PyResult<Rational> {
    Rational::from_str(s).map_err(value_err)
}

fn parse_branch(s: &str) -> PyResult<Branch> {
    Branch::from_str(s).map_err(value_err)
}

fn parse_realization(s: &str) -> PyResult<Realization> {
    match s {
        "s-form" | "s" => Ok(Realization::SForm),
        "y-form" | "y" => Ok(Realization::YForm),
        other => Err(value_err(format!("unknown realization {other:?}"))),
    }
}

/// Exact exp-monomial sums q·x^r·e^{P(x)}; the coefficient ring of the
/// symbolic layer.
#[pyclass(name = "ExpPoly")]
#[derive(Clone)]
struct PyExpPoly {
    inner: ExpPoly,
}

#[pymethods]
impl PyExpPoly {
    /// Parse the canonical rendering, e.g. "(1/2)·x^(-1/2)·exp((1/2)x)".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyExpPoly {
            inner: text.parse().map_err(value_err)?,
        })
    }

    /// c·x^r for rational strings c, r.
    #[staticmethod]
    fn monomial(coeff: &str, power: &str) -> PyResult<Self> {
        Ok(PyExpPoly {
            inner: ExpPoly::monomial(parse_rat(coeff)?, parse_rat(power)?),
        })
    }

    fn derive(&self) -> Self {
        PyExpPoly {
            inner: self.inner.derive(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Numeric value at x > 0, as (re, im).
    fn eval(&self, x: f64) -> (f64, f64) {
        let v = self.inner.eval_f64(x);
        (v.re, v.im)
    }

    fn __add__(&self, other: &PyExpPoly) -> Self {
        PyExpPoly {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyExpPoly) -> Self {
        PyExpPoly {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyExpPoly) -> Self {
        PyExpPoly {
            inner: &self.inner * &other.inner,
        }
    }

    fn __richcmp__(&self, other: &PyExpPoly, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(value_err("ExpPoly supports == and != only")),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExpPoly({})", self.inner)
    }
}

/// Differential operators Σ cₖ(x)∂ᵏ over the ring.
#[pyclass(name = "DiffOp")]
#[derive(Clone)]
struct PyDiffOp {
    inner: diffop::DiffOp,
}

#[pymethods]
impl PyDiffOp {
    /// Parse the canonical rendering, e.g. "∂^2[(1)] + ∂^0[(1)·x^(-2)]".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDiffOp {
            inner: text.parse().map_err(value_err)?,
        })
    }

    /// The su(1,1) generator Γ_index (1, 2 or 3) at parameter α, in the
    /// "s-form" or "y-form" realization.
    #[staticmethod]
    fn gamma(index: u8, alpha: &str, realization: &str) -> PyResult<Self> {
        Ok(PyDiffOp {
            inner: diffop::make_gamma(index, &parse_rat(alpha)?, parse_realization(realization)?)
                .map_err(value_err)?,
        })
    }

    fn commutator(&self, other: &PyDiffOp) -> Self {
        PyDiffOp {
            inner: self.inner.commutator(&other.inner),
        }
    }

    fn apply(&self, f: &PyExpPoly) -> PyExpPoly {
        PyExpPoly {
            inner: self.inner.apply(&f.inner),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DiffOp({})", self.inner)
    }
}

/// True iff all three su(1,1) commutation relations hold exactly.
#[pyfunction]
fn check_su11(alpha: &str, realization: &str) -> PyResult<bool> {
    let report = diffop::check_su11(&parse_rat(alpha)?, parse_realization(realization)?);
    Ok(report.all_pass())
}

/// Discrete level: returns (exact string, float) for Ê at (C, D, n, branch).
#[pyfunction]
fn discrete_energy(c: &str, d: &str, n: u32, branch: &str) -> PyResult<(String, f64)> {
    let level = spectrum::discrete_energy(&parse_rat(c)?, &parse_rat(d)?, n, parse_branch(branch)?)
        .map_err(value_err)?;
    Ok((level.e_hat.to_string(), level.e_hat.to_f64()))
}

/// JSON list of levels n = 0..=n_max on the chosen branch; rows that fail the
/// branch gate carry a "rejected" note.
#[pyfunction]
fn spectrum_json(c: &str, d: &str, n_max: u32, branch: &str) -> PyResult<String> {
    let (c, d) = (parse_rat(c)?, parse_rat(d)?);
    let branch = parse_branch(branch)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        match spectrum::discrete_energy(&c, &d, n, branch) {
            Ok(level) => rows.push(serde_json::json!({
                "n": n, "level": level, "note": ""
            })),
            Err(e @ spectrum::SpectrumError::BranchDenominator(_)) => {
                rows.push(serde_json::json!({"n": n, "note": e.to_string()}))
            }
            Err(e) => return Err(value_err(e)),
        }
    }
    Ok(serde_json::json!({ "levels": rows }).to_string())
}

/// The exact Laurent-ansatz solutions at degree N, principal first (JSON).
#[pyfunction]
fn ansatz_solve_json(n: u32) -> PyResult<String> {
    if n == 0 {
        return Err(value_err("N must be ≥ 1"));
    }
    let solutions = symmetry::ansatz_solve(n);
    serde_json::to_string(&solutions).map_err(value_err)
}

/// The transformed family member at exponent p from (C, D, n, branch) (JSON).
#[pyfunction]
fn family_member_json(c: &str, d: &str, n: u32, branch: &str, p: &str) -> PyResult<String> {
    let members = family::family_members(
        &parse_rat(c)?,
        &parse_rat(d)?,
        n,
        parse_branch(branch)?,
        &[parse_rat(p)?],
    )
    .map_err(value_err)?;
    serde_json::to_string(&members[0]).map_err(value_err)
}

/// Verify the extended X/Y/Z commutation table; returns the full report (JSON).
#[pyfunction]
fn verify_relations_json(d: &str, max_n: u32) -> PyResult<String> {
    let report = liealg::verify_relations(&parse_rat(d)?, max_n);
    serde_json::to_string(&report).map_err(value_err)
}

/// Finite-difference check of the plus-branch levels (JSON report).
#[pyfunction]
#[pyo3(signature = (c, d, k, m = 20_000))]
fn solve_radial_json(c: &str, d: &str, k: usize, m: usize) -> PyResult<String> {
    let report = oracle::solve_radial_with(
        &parse_rat(c)?,
        &parse_rat(d)?,
        k,
        oracle::OracleOptions {
            m,
            ..Default::default()
        },
    )
    .map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// True iff the harmonic-oscillator β ansatz admits a Laurent solution (it
/// never does; exposed so the claim is checkable from Python).
#[pyfunction]
fn oscillator_beta_has_solution(n_neg: u32, n_pos: u32) -> bool {
    symmetry::oscillator_beta_solve(n_neg, n_pos).is_some()
}

/// Run the verification suite; returns the records as JSON.
#[pyfunction]
#[pyo3(signature = (skip_numeric = false))]
fn verify_all_json(skip_numeric: bool) -> PyResult<String> {
    let records = verify::run_all(&VerifyOptions {
        skip_numeric,
        ..Default::default()
    });
    serde_json::to_string(&records).map_err(value_err)
}

#[pymodule]
fn kratzer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpPoly>()?;
    m.add_class::<PyDiffOp>()?;
    m.add_function(wrap_pyfunction!(check_su11, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_energy, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_json, m)?)?;
    m.add_function(wrap_pyfunction!(ansatz_solve_json, m)?)?;
    m.add_function(wrap_pyfunction!(family_member_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations_json, m)?)?;
    m.add_function(wrap_pyfunction!(solve_radial_json, m)?)?;
    m.add_function(wrap_pyfunction!(oscillator_beta_has_solution, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all_json, m)?)?;
    Ok(())
}
