//! Exact dense linear algebra over small fields.
//!
//! Gaussian elimination is generic over a [`Scalar`] field so the same code
//! serves the rational ansatz systems and the Gaussian-rational span tests.
//! A fraction-free (Bareiss) routine over [`RatPoly`] entries supplies
//! determinants and nonzero maximal minors of matrices that are polynomial in
//! one symbolic parameter.

use crate::ratpoly::RatPoly;
use crate::rational::{GaussRational, Rational};

/// Field operations needed by elimination.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for GaussRational {
    fn zero() -> Self {
        GaussRational::zero()
    }
    fn one() -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Row-echelon reduction in place; returns the pivot columns.
fn echelon<T: Scalar>(m: &mut Vec<Vec<T>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = T::one().div(&m[row][col]);
        for c in col..cols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..cols {
                    let t = m[row][c].mul(&factor);
                    m[i][c] = m[i][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Basis of the nullspace of `m` (rows × cols), as vectors of length cols.
pub fn nullspace<T: Scalar>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<T>> = m.to_vec();
    let pivots = echelon(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![T::zero(); cols];
        v[fc] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = work[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve A·x = b exactly. Returns None when inconsistent. When the solution is
/// not unique, free variables are set to zero.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "solve: dimension mismatch");
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut work: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut work);
    // pivot in the augmented column means inconsistency
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][cols].clone();
    }
    Some(x)
}

/// Outcome of fraction-free elimination on a matrix with [`RatPoly`] entries.
pub struct PolyElimination {
    /// Rank over the rational-function field (generic rank).
    pub rank: usize,
    /// Determinant of the pivoted maximal square submatrix (up to sign a
    /// nonzero maximal minor); equals the determinant for square full-rank
    /// input, up to the recorded sign.
    pub minor: RatPoly,
    /// Sign flips accumulated by row/column swaps.
    pub sign: i32,
}

/// Bareiss fraction-free elimination with full pivoting.
///
/// Every specialization of the parameter that drops the matrix rank below the
/// generic rank must be a root of `minor`, which is what the ansatz solvers
/// rely on to enumerate candidate energies.
pub fn bareiss(matrix: &[Vec<RatPoly>]) -> PolyElimination {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<RatPoly>> = matrix.to_vec();
    let mut prev = RatPoly::one();
    let mut sign = 1;
    let mut rank = 0;
    let steps = rows.min(cols);
    for k in 0..steps {
        // prefer a low-degree nonzero pivot to keep intermediate degrees down
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(d) = m[i][j].degree() {
                    if best.map_or(true, |(_, _, bd)| d < bd) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            break; // all remaining entries are zero
        };
        if pi != k {
            m.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is always exact");
            }
            m[i][k] = RatPoly::zero();
        }
        prev = m[k][k].clone();
        rank += 1;
    }
    PolyElimination {
        rank,
        minor: prev,
        sign,
    }
}

/// Determinant of a square matrix of polynomials (exact).
pub fn poly_det(matrix: &[Vec<RatPoly>]) -> RatPoly {
    let n = matrix.len();
    if n == 0 {
        return RatPoly::one();
    }
    assert!(matrix.iter().all(|r| r.len() == n), "poly_det: not square");
    let elim = bareiss(matrix);
    if elim.rank < n {
        return RatPoly::zero();
    }
    if elim.sign < 0 {
        elim.minor.neg()
    } else {
        elim.minor
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        // x + y + z = 0, x − y = 0 → span{(1, 1, −2)} scaled
        let m = vec![
            vec![r(1, 1), r(1, 1), r(1, 1)],
            vec![r(1, 1), r(-1, 1), r(0, 1)],
        ];
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // check A·v = 0
        for row in &m {
            let dot = row
                .iter()
                .zip(v)
                .fold(r(0, 1), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(3, 1)]];
        let x = solve(&a, &[r(4, 1), r(6, 1)]).unwrap();
        assert_eq!(x, vec![r(2, 1), r(2, 1)]);

        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(2, 1), r(2, 1)]];
        assert!(solve(&a, &[r(1, 1), r(3, 1)]).is_none());
    }

    #[test]
    fn poly_det_matches_hand_expansion() {
        let t = RatPoly::var();
        let one = RatPoly::one();
        // det [[t, 1], [1, t]] = t² − 1
        let m = vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]];
        let det = poly_det(&m);
        assert_eq!(
            det,
            RatPoly::from_vec(vec![r(-1, 1), r(0, 1), r(1, 1)])
        );
    }

    #[test]
    fn bareiss_minor_on_rectangular_system() {
        let t = RatPoly::var();
        // rows: [1, 0], [0, t], [1, 1] → generic rank 2, minor nonzero
        let m = vec![
            vec![RatPoly::one(), RatPoly::zero()],
            vec![RatPoly::zero(), t.clone()],
            vec![RatPoly::one(), RatPoly::one()],
        ];
        let elim = bareiss(&m);
        assert_eq!(elim.rank, 2);
        assert!(!elim.minor.is_zero());
    }
}
