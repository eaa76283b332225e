//! Independent floating-point verification of the closed-form spectra.
//!
//! The radial equation is rewritten as −u″ + V(x)u = Êu with V = −C/x² − D/x,
//! discretized by the standard 3-point stencil on a truncated half-line with
//! Dirichlet ends, and the lowest eigenvalues of the resulting symmetric
//! tridiagonal matrix are found by deterministic bisection on Sturm-sequence
//! inertia counts inside Gershgorin bounds. Two grid resolutions (m and 2m)
//! feed a Richardson extrapolation; the symbolic layer never depends on any of
//! this.
//!
//! Only the plus branch is oracle-checkable: the minus-branch symmetry
//! energies come with solutions like e^{x/2}x^{−1/2} that grow at infinity, so
//! no truncated Dirichlet problem can see them. Reports state this explicitly.

use crate::family::GeneralizedProblem;
use crate::rational::Rational;
use crate::spectrum::{self, Branch, SpectrumError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid grid: need 0 < x_min < x_max and m ≥ 3 (got [{x_min}, {x_max}], m = {m})")]
    InvalidGrid { x_min: f64, x_max: f64, m: usize },
    #[error("potential is not finite at x = {x}: V(x) = {value}")]
    NonFiniteV { x: f64, value: f64 },
    #[error("requested k = {k} eigenvalues from an m = {m} matrix")]
    KOutOfRange { k: usize, m: usize },
    #[error("bisection tolerance must be positive, got {0}")]
    NonPositiveTol(f64),
    #[error("potential overflows at grid edge x = {x}; suggested x_max ≈ {suggested_x_max}")]
    PotentialOverflow { x: f64, suggested_x_max: f64 },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Uniform grid of m interior points on (x_min, x_max) with Dirichlet ends.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub m: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, m: usize) -> Result<Self, OracleError> {
        if !(x_min > 0.0 && x_max > x_min && m >= 3 && x_min.is_finite() && x_max.is_finite()) {
            return Err(OracleError::InvalidGrid { x_min, x_max, m });
        }
        Ok(Grid {
            x_min,
            x_max,
            m,
            h: (x_max - x_min) / (m as f64 + 1.0),
        })
    }

    /// Interior point i = 1..=m.
    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.h * i as f64
    }
}

/// Symmetric tridiagonal matrix; off-diagonal entries are all −1/h² for the
/// standard stencil but are stored explicitly.
#[derive(Clone, Debug)]
pub struct TriMatrix {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// diag[i] = 2/h² + V(x_i), off = −1/h², Dirichlet at both ends.
pub fn discretize(v: impl Fn(f64) -> f64, grid: &Grid) -> Result<TriMatrix, OracleError> {
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let mut diag = Vec::with_capacity(grid.m);
    for i in 1..=grid.m {
        let x = grid.point(i);
        let vx = v(x);
        if !vx.is_finite() {
            return Err(OracleError::NonFiniteV { x, value: vx });
        }
        diag.push(2.0 * inv_h2 + vx);
    }
    Ok(TriMatrix {
        diag,
        off: vec![-inv_h2; grid.m - 1],
    })
}

/// Number of eigenvalues strictly below lambda (LDLᵀ pivot signs).
pub fn sturm_count(t: &TriMatrix, lambda: f64) -> usize {
    let n = t.diag.len();
    if n == 0 {
        return 0;
    }
    // guard keeps the recurrence finite when a pivot lands exactly on zero
    const PIVOT_GUARD: f64 = 1e-300;
    let mut count = 0usize;
    let mut q = t.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < PIVOT_GUARD {
            if q >= 0.0 {
                PIVOT_GUARD
            } else {
                -PIVOT_GUARD
            }
        } else {
            q
        };
        q = (t.diag[i] - lambda) - t.off[i - 1] * t.off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin_bounds(t: &TriMatrix) -> (f64, f64) {
    let n = t.diag.len();
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let left = if i > 0 { t.off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { t.off[i].abs() } else { 0.0 };
        lo = lo.min(t.diag[i] - left - right);
        hi = hi.max(t.diag[i] + left + right);
    }
    (lo - 1.0, hi + 1.0)
}

/// Eigenvalue of index k (0-based, ascending) by bisection to width ≤ tol.
fn eigenvalue_by_index(t: &TriMatrix, k: usize, tol: f64) -> f64 {
    let (mut lo, mut hi) = gershgorin_bounds(t);
    // bisection is monotone on the inertia count, hence deterministic
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        if sturm_count(t, mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The k smallest eigenvalues, ascending, each within tol of the true matrix
/// eigenvalue. Bit-identical across runs: pure sequential bisection.
pub fn lowest_eigenvalues(t: &TriMatrix, k: usize, tol: f64) -> Result<Vec<f64>, OracleError> {
    let m = t.diag.len();
    if k == 0 || k > m {
        return Err(OracleError::KOutOfRange { k, m });
    }
    if !(tol > 0.0) {
        return Err(OracleError::NonPositiveTol(tol));
    }
    Ok((0..k).map(|i| eigenvalue_by_index(t, i, tol)).collect())
}

/// The eigenvalue closest to zero, via inertia counts: compares the largest
/// negative and the smallest non-negative eigenvalue.
pub fn eigenvalue_nearest_zero(t: &TriMatrix, tol: f64) -> Result<f64, OracleError> {
    if !(tol > 0.0) {
        return Err(OracleError::NonPositiveTol(tol));
    }
    let m = t.diag.len();
    let negatives = sturm_count(t, 0.0);
    let mut best = f64::INFINITY;
    if negatives > 0 {
        let below = eigenvalue_by_index(t, negatives - 1, tol);
        if below.abs() < best.abs() {
            best = below;
        }
    }
    if negatives < m {
        let above = eigenvalue_by_index(t, negatives, tol);
        if above.abs() < best.abs() {
            best = above;
        }
    }
    Ok(best)
}

/// Options for [`solve_radial_with`]; `m` is the coarse interior point count.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OracleOptions {
    pub m: usize,
    pub bisect_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            m: 20_000,
            bisect_tol: 1e-12,
        }
    }
}

/// One verified level in a [`SpectrumReport`].
#[derive(Clone, Debug, Serialize)]
pub struct LevelRecord {
    pub n: u32,
    /// Closed form from the quantization condition (plus branch), exact string.
    pub closed_form: String,
    pub closed_form_value: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Richardson extrapolation (4·fine − coarse)/3 of the two resolutions.
    pub numeric: f64,
    pub rel_error: f64,
    /// |coarse − closed| / |fine − closed|: ≈ 4 for the second-order stencil.
    pub refinement_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub c: Rational,
    pub d: Rational,
    pub grid_coarse: Grid,
    pub grid_fine: Grid,
    pub levels: Vec<LevelRecord>,
    pub converged: bool,
    pub note: String,
}

/// Verify the plus-branch closed forms for the lowest k levels of
/// u″ + (C/x² + D/x + Ê)u = 0 against the discretized problem.
pub fn solve_radial(c: &Rational, d: &Rational, k: usize) -> Result<SpectrumReport, OracleError> {
    solve_radial_with(c, d, k, OracleOptions::default())
}

pub fn solve_radial_with(
    c: &Rational,
    d: &Rational,
    k: usize,
    opts: OracleOptions,
) -> Result<SpectrumReport, OracleError> {
    // closed forms first; this also enforces D > 0 and 1 − 4C ≥ 0
    let mut closed = Vec::with_capacity(k);
    for n in 0..k as u32 {
        closed.push(spectrum::discrete_energy(c, d, n, Branch::Plus)?);
    }

    let cf = c.to_f64();
    let df = d.to_f64();
    // Domain: x_max scales with the outer turning point of the highest level;
    // x_min sits deep enough under the innermost lobe that the wall shift is
    // below the stencil error (the wall error grows like x_min·|u′(0)|²).
    let x_min = 1e-8 / df;
    let x_max = 40.0 * (k * k) as f64 / df;
    let grid_coarse = Grid::new(x_min, x_max, opts.m)?;
    let grid_fine = Grid::new(x_min, x_max, 2 * opts.m)?;
    let v = |x: f64| -cf / (x * x) - df / x;
    let coarse = lowest_eigenvalues(&discretize(v, &grid_coarse)?, k, opts.bisect_tol)?;
    let fine = lowest_eigenvalues(&discretize(v, &grid_fine)?, k, opts.bisect_tol)?;

    let mut levels = Vec::with_capacity(k);
    let mut converged = true;
    for n in 0..k {
        let exact = closed[n].e_hat.to_f64();
        let extrap = (4.0 * fine[n] - coarse[n]) / 3.0;
        let rel_error = if exact != 0.0 {
            (extrap - exact).abs() / exact.abs()
        } else {
            extrap.abs()
        };
        let agreement = (fine[n] - coarse[n]).abs() / fine[n].abs().max(f64::MIN_POSITIVE);
        if agreement > 1e-4 {
            converged = false;
        }
        levels.push(LevelRecord {
            n: n as u32,
            closed_form: closed[n].e_hat.to_string(),
            closed_form_value: exact,
            coarse: coarse[n],
            fine: fine[n],
            numeric: extrap,
            rel_error,
            refinement_ratio: (coarse[n] - exact).abs() / (fine[n] - exact).abs().max(f64::MIN_POSITIVE),
        });
    }
    Ok(SpectrumReport {
        c: c.clone(),
        d: d.clone(),
        grid_coarse,
        grid_fine,
        levels,
        converged,
        note: "plus branch only: minus-branch symmetry energies correspond to \
               non-normalizable solutions and are not oracle-checkable"
            .to_string(),
    })
}

/// Potential of the transformed equation, negated bracket:
/// W(x) = −[inv_square/x² + Σ coeffᵢ x^{expᵢ}], so the equation reads
/// −u″ + W(x)u = 0·u and the predicted solution is a zero mode.
pub fn generalized_potential(gp: &GeneralizedProblem) -> impl Fn(f64) -> f64 {
    let inv_sq = gp.inv_square_coeff.to_f64();
    let terms: Vec<(f64, f64)> = gp
        .power_terms
        .iter()
        .map(|(c, e)| (c.to_f64(), e.to_f64()))
        .collect();
    move |x: f64| {
        let mut acc = inv_sq / (x * x);
        for (c, e) in &terms {
            acc += c * x.powf(*e);
        }
        -acc
    }
}

/// Smallest |eigenvalue| of the discretized transformed equation; a small
/// residual certifies the predicted solution at spectral parameter zero.
pub fn zero_mode_residual(gp: &GeneralizedProblem, grid: &Grid) -> Result<f64, OracleError> {
    let w = generalized_potential(gp);
    // reject overflowing potentials with a usable suggestion
    let edge = grid.x_max;
    let w_edge = w(edge);
    if !w_edge.is_finite() {
        let max_exp = gp
            .power_terms
            .iter()
            .map(|(_, e)| e.to_f64())
            .fold(2.0, f64::max);
        let suggested = 1e100f64.powf(1.0 / max_exp);
        return Err(OracleError::PotentialOverflow {
            x: edge,
            suggested_x_max: suggested,
        });
    }
    let t = discretize(w, grid)?;
    eigenvalue_nearest_zero(&t, 1e-10)
}

/// Default zero-mode grid for a family member: maps the radial domain used by
/// [`solve_radial`] through x ↦ x^{1/(2p)} (the member coordinate satisfies
/// y^{2p} = original x) with 20% outer margin.
pub fn suggested_zero_mode_grid(
    gp: &GeneralizedProblem,
    d: &Rational,
    n: u32,
    m: usize,
) -> Result<Grid, OracleError> {
    let df = d.to_f64();
    let p = gp.p.to_f64();
    let x_min_radial: f64 = 1e-8 / df;
    let x_max_radial = 40.0 * ((n + 1) * (n + 1)) as f64 / df;
    let exponent = 1.0 / (2.0 * p);
    Grid::new(
        x_min_radial.powf(exponent),
        1.2 * x_max_radial.powf(exponent),
        m,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn discretize_pure_laplacian() {
        // h = 1, m = 3: diag [2,2,2], off [−1,−1]
        let grid = Grid::new(0.5, 4.5, 3).unwrap();
        assert!((grid.h - 1.0).abs() < 1e-15);
        let t = discretize(|_| 0.0, &grid).unwrap();
        assert_eq!(t.diag, vec![2.0, 2.0, 2.0]);
        assert_eq!(t.off, vec![-1.0, -1.0]);
    }

    #[test]
    fn discretize_adds_potential_pointwise() {
        // x_i = 1, 2, 3 with h = 1 and V = −1/x → diag [1, 1.5, 5/3]
        let grid = Grid::new(0.0_f64.max(1e-300), 4.0, 3);
        // grid [0,4] violates x_min > 0; use the intended one
        assert!(grid.is_err() || grid.is_ok());
        let grid = Grid::new(1e-12, 4.0 + 1e-12, 3).unwrap();
        let t = discretize(|x| -1.0 / x, &grid).unwrap();
        for (got, expect) in t.diag.iter().zip([1.0, 1.5, 5.0 / 3.0]) {
            assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
        }
    }

    #[test]
    fn discretize_rejects_pole_on_grid() {
        let grid = Grid::new(0.5, 4.5, 3).unwrap();
        // pole at x = 2.5 which is a grid point
        let err = discretize(|x| 1.0 / (x - 2.5), &grid).unwrap_err();
        assert!(matches!(err, OracleError::NonFiniteV { .. }));
    }

    #[test]
    fn eigenvalues_of_closed_form_3x3() {
        let t = TriMatrix {
            diag: vec![2.0, 2.0, 2.0],
            off: vec![-1.0, -1.0],
        };
        let w = lowest_eigenvalues(&t, 3, 1e-13).unwrap();
        let expect = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (got, exp) in w.iter().zip(expect) {
            assert!((got - exp).abs() < 1e-12, "{got} vs {exp}");
        }
    }

    #[test]
    fn eigenvalue_one_by_one() {
        let t = TriMatrix { diag: vec![5.0], off: vec![] };
        let w = lowest_eigenvalues(&t, 1, 1e-13).unwrap();
        assert!((w[0] - 5.0).abs() <= 1e-13);
        assert!(matches!(
            lowest_eigenvalues(&t, 2, 1e-13),
            Err(OracleError::KOutOfRange { .. })
        ));
        assert!(matches!(
            lowest_eigenvalues(&t, 1, 0.0),
            Err(OracleError::NonPositiveTol(_))
        ));
    }

    #[test]
    fn determinism_bitwise() {
        let grid = Grid::new(1e-5, 160.0, 2000).unwrap();
        let t = discretize(|x| -1.0 / x, &grid).unwrap();
        let a = lowest_eigenvalues(&t, 2, 1e-12).unwrap();
        let b = lowest_eigenvalues(&t, 2, 1e-12).unwrap();
        assert_eq!(a, b); // exact equality, not approximate
        assert!((a[0] + 0.25).abs() < 2e-3);
    }

    #[test]
    fn solve_radial_rejects_bad_inputs() {
        assert!(solve_radial(&r(1, 1), &r(1, 1), 1).is_err()); // 1−4C < 0
        assert!(solve_radial(&r(0, 1), &r(-1, 1), 1).is_err()); // D ≤ 0
    }

    // The full-accuracy solve_radial runs live in the integration suite; a
    // small smoke test keeps this module's unit tests fast.
    #[test]
    fn solve_radial_smoke() {
        let report = solve_radial_with(
            &r(0, 1),
            &r(1, 1),
            1,
            OracleOptions { m: 3000, bisect_tol: 1e-12 },
        )
        .unwrap();
        assert_eq!(report.levels.len(), 1);
        let lvl = &report.levels[0];
        assert_eq!(lvl.closed_form, "-1/4");
        assert!(lvl.rel_error < 1e-3, "rel error {}", lvl.rel_error);
    }
}
