//! Exact quadratic algebraic numbers `a + b·√r` and short sums of square roots.
//!
//! The spectrum formulas stay inside a single real quadratic extension
//! Q(√(1−4C)), so [`QuadExt`] (value plus certified rational enclosure of any
//! requested width) covers every energy the pipeline produces. The quantization
//! residual can mix two independent radicals, handled by [`SqrtSum`] with an
//! exact zero test that needs no integer factorization: it only ever asks
//! whether a rational is a perfect square.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use std::fmt;

/// Floor of √n for n ≥ 0.
fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// If r ≥ 0 is the square of a rational, return that square root.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = isqrt(r.numer());
    let sd = isqrt(r.denom());
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::from_big(sn, sd))
    } else {
        None
    }
}

/// A rational enclosure [lo, hi] of √r with hi − lo ≤ width, for r ≥ 0.
pub fn sqrt_enclosure(r: &Rational, width: &Rational) -> (Rational, Rational) {
    assert!(!r.is_negative(), "sqrt_enclosure: negative radicand");
    assert!(width.is_positive(), "sqrt_enclosure: width must be positive");
    if let Some(s) = rational_sqrt(r) {
        return (s.clone(), s);
    }
    // √(p/q) = √(pq)/q; bound √(pq) by scaled integer square roots:
    // with t = pq·s², isqrt(t) ≤ √t < isqrt(t)+1, so enclosure width 1/(s·q).
    let q = r.denom().clone();
    let pq = r.numer() * &q;
    // choose scale s ≥ 1/(width·q) so that 1/(s·q) ≤ width
    let inv = width.recip();
    let scale: BigInt = inv.numer() / (inv.denom() * &q) + 1;
    let t = &pq * &scale * &scale;
    let lo_i = isqrt(&t);
    let hi_i = &lo_i + 1;
    let denom = &scale * &q;
    (
        Rational::from_big(lo_i, denom.clone()),
        Rational::from_big(hi_i, denom),
    )
}

/// Exact element a + b·√r of a real quadratic extension.
///
/// Canonical: r ≥ 0; if b = 0 then r = 0; if √r is rational the value is folded
/// into the rational part, so `root` is never a perfect square when b ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    rat: Rational,
    coef: Rational,
    root: Rational,
}

impl QuadExt {
    pub fn from_rational(r: Rational) -> Self {
        QuadExt {
            rat: r,
            coef: Rational::zero(),
            root: Rational::zero(),
        }
    }

    /// a + b√r, canonicalized. Panics if r < 0.
    pub fn new(rat: Rational, coef: Rational, root: Rational) -> Self {
        assert!(!root.is_negative(), "QuadExt: negative radicand");
        if coef.is_zero() || root.is_zero() {
            return QuadExt::from_rational(rat);
        }
        if let Some(s) = rational_sqrt(&root) {
            return QuadExt::from_rational(&rat + &(&coef * &s));
        }
        QuadExt { rat, coef, root }
    }

    /// √r.
    pub fn sqrt(root: Rational) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), root)
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn radical_coef(&self) -> &Rational {
        &self.coef
    }

    pub fn radicand(&self) -> &Rational {
        &self.root
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    fn same_field(&self, other: &QuadExt) -> bool {
        self.is_rational() || other.is_rational() || self.root == other.root
    }

    fn field_root(&self, other: &QuadExt) -> Rational {
        if !self.is_rational() {
            self.root.clone()
        } else {
            other.root.clone()
        }
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        assert!(self.same_field(other), "QuadExt::add: incompatible radicands");
        QuadExt::new(
            &self.rat + &other.rat,
            &self.coef + &other.coef,
            self.field_root(other),
        )
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            rat: -&self.rat,
            coef: -&self.coef,
            root: self.root.clone(),
        }
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        assert!(self.same_field(other), "QuadExt::mul: incompatible radicands");
        let root = self.field_root(other);
        // (a + b√r)(c + d√r) = ac + bdr + (ad + bc)√r
        let rat = &(&self.rat * &other.rat) + &(&(&self.coef * &other.coef) * &root);
        let coef = &(&self.rat * &other.coef) + &(&self.coef * &other.rat);
        QuadExt::new(rat, coef, root)
    }

    pub fn scale(&self, s: &Rational) -> QuadExt {
        QuadExt::new(&self.rat * s, &self.coef * s, self.root.clone())
    }

    /// Multiplicative inverse via the conjugate. Panics on zero.
    pub fn recip(&self) -> QuadExt {
        assert!(!self.is_zero(), "QuadExt::recip: division by zero");
        // 1/(a + b√r) = (a − b√r)/(a² − b²r)
        let denom = &(&self.rat * &self.rat) - &(&(&self.coef * &self.coef) * &self.root);
        assert!(!denom.is_zero(), "QuadExt::recip: zero norm (√r rational?)");
        QuadExt::new(&self.rat / &denom, -&(&self.coef / &denom), self.root.clone())
    }

    /// Exact sign: −1, 0, or +1.
    pub fn signum(&self) -> i32 {
        if self.coef.is_zero() {
            return self.rat.signum();
        }
        if self.rat.is_zero() {
            return self.coef.signum();
        }
        let sa = self.rat.signum();
        let sb = self.coef.signum();
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a² with b²·r (value sign matches the larger side)
        let a2 = &self.rat * &self.rat;
        let b2r = &(&self.coef * &self.coef) * &self.root;
        match a2.cmp(&b2r) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0, // impossible in canonical form (√r irrational)
        }
    }

    /// Certified rational enclosure [lo, hi] with hi − lo ≤ width.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        if self.coef.is_zero() {
            return (self.rat.clone(), self.rat.clone());
        }
        let sub_width = width / &self.coef.abs();
        let (slo, shi) = sqrt_enclosure(&self.root, &sub_width);
        let (t1, t2) = (&self.coef * &slo, &self.coef * &shi);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        (&self.rat + &lo, &self.rat + &hi)
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.coef.to_f64() * self.root.to_f64().sqrt()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt({})", self.coef, self.root);
        }
        write!(f, "{} + {}*sqrt({})", self.rat, self.coef, self.root)
    }
}

/// A value q₀ + Σᵢ qᵢ·√rᵢ with at most two irrational radicals.
///
/// Enough for the quantization residual (4n + 2 ± √(1−4a)) − c/√(−b), which
/// mixes √(1−4a) and √(−b). The zero test is exact: radicals with rational
/// square ratio are merged, and distinct surviving radicals are linearly
/// independent over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtSum {
    pub rational: Rational,
    /// (coefficient, radicand) pairs; radicands positive non-squares, distinct.
    pub radicals: Vec<(Rational, Rational)>,
}

impl SqrtSum {
    pub fn from_rational(r: Rational) -> Self {
        SqrtSum {
            rational: r,
            radicals: Vec::new(),
        }
    }

    /// Build q₀ + Σ qᵢ√rᵢ, folding perfect squares and merging equivalent
    /// radicals (rᵢ/rⱼ a rational square).
    pub fn new(rational: Rational, parts: Vec<(Rational, Rational)>) -> Self {
        let mut rat = rational;
        let mut radicals: Vec<(Rational, Rational)> = Vec::new();
        'outer: for (coef, root) in parts {
            assert!(!root.is_negative(), "SqrtSum: negative radicand");
            if coef.is_zero() || root.is_zero() {
                continue;
            }
            if let Some(s) = rational_sqrt(&root) {
                rat = &rat + &(&coef * &s);
                continue;
            }
            for (c, r) in radicals.iter_mut() {
                // same field iff root/r is a rational square: √root = t·√r
                if let Some(t) = rational_sqrt(&(&root / &*r)) {
                    *c = &*c + &(&coef * &t);
                    continue 'outer;
                }
            }
            radicals.push((coef, root));
        }
        radicals.retain(|(c, _)| !c.is_zero());
        radicals.sort_by(|x, y| x.1.cmp(&y.1));
        SqrtSum {
            rational: rat,
            radicals,
        }
    }

    /// Exact zero test: in canonical form the radicals are independent over Q,
    /// so the value is zero iff every part is zero.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radicals.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.radicals.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64()
            + self
                .radicals
                .iter()
                .map(|(c, r)| c.to_f64() * r.to_f64().sqrt())
                .sum::<f64>()
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let mut first = self.rational.is_zero();
        if !first {
            write!(f, "{}", self.rational)?;
        }
        for (c, r) in &self.radicals {
            if first {
                write!(f, "{c}*sqrt({r})")?;
                first = false;
            } else {
                write!(f, " + {c}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}
