//! Dense univariate polynomials over [`Rational`], used as matrix entries when
//! the Laurent-ansatz systems are eliminated with the energy kept symbolic.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and its last element is nonzero otherwise. Includes the
//! exact division needed by fraction-free (Bareiss) elimination and a complete
//! rational-root search for the resulting determinant polynomials.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::from_vec(vec![c])
    }

    /// The indeterminate.
    pub fn var() -> Self {
        RatPoly::from_vec(vec![Rational::zero(), Rational::one()])
    }

    /// a + b·t.
    pub fn linear(a: Rational, b: Rational) -> Self {
        RatPoly::from_vec(vec![a, b])
    }

    pub fn from_vec(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        RatPoly::from_vec(coeffs)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        RatPoly::from_vec(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RatPoly::from_vec(coeffs)
    }

    /// Exact division; returns None when the remainder is nonzero.
    pub fn div_exact(&self, other: &RatPoly) -> Option<RatPoly> {
        assert!(!other.is_zero(), "RatPoly::div_exact: division by zero polynomial");
        if self.is_zero() {
            return Some(RatPoly::zero());
        }
        let dn = self.degree().unwrap();
        let dd = other.degree().unwrap();
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); dn - dd + 1];
        let lead = other.coeffs.last().unwrap();
        for k in (0..=dn - dd).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&q * b);
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(RatPoly::from_vec(quot))
    }

    /// All rational roots, each exactly verified, in ascending order.
    ///
    /// Scales to a primitive integer polynomial and runs the rational-root
    /// theorem; candidate divisors come from trial-division factorizations.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut poly = self.clone();
        // factor out t^k
        while poly.coeff(0).is_zero() && poly.degree().is_some_and(|d| d > 0) {
            roots.push(Rational::zero());
            poly = RatPoly::from_vec(poly.coeffs[1..].to_vec());
        }
        if poly.degree() == Some(0) || poly.is_zero() {
            roots.sort();
            roots.dedup();
            return roots;
        }
        // clear denominators and strip content → primitive integer coefficients
        let mut lcm = BigInt::one();
        for c in &poly.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let mut int_coeffs: Vec<BigInt> = poly
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &int_coeffs {
            content = num_integer::gcd(content, c.clone());
        }
        if content > BigInt::one() {
            for c in int_coeffs.iter_mut() {
                *c /= &content;
            }
        }
        let a0 = int_coeffs.first().unwrap().abs();
        let ad = int_coeffs.last().unwrap().abs();
        for p in divisors(&a0) {
            for q in divisors(&ad) {
                for sign in [1i64, -1] {
                    let cand = Rational::from_big(&p * BigInt::from(sign), q.clone());
                    if poly.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Positive divisors of |n| via trial-division factorization.
///
/// Desk-scale inputs only: any cofactor surviving trial division up to 10⁶ is
/// treated as prime, which is exact for every system this crate builds.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &(&p * &p) <= &n && p <= limit {
        let mut mult = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            mult += 1;
        }
        if mult > 0 {
            factors.push((p.clone(), mult));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !n.is_one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, mult) in factors {
        let mut next = Vec::with_capacity(divs.len() * (mult as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=mult {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}
