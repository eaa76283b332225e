//! Differential operators Σₖ cₖ(x)∂ᵏ with exp-monomial coefficients.
//!
//! Composition expands ∂ᵏ∘(c·) by the Leibniz rule, so operator identities are
//! decided syntactically in canonical form. The module also houses the su(1,1)
//! generator realizations Γ₁, Γ₂, Γ₃ (in the original coordinate and in the
//! cube-root coordinate), the commutation-relation checker, and the
//! decomposition of ∂² + a/s² + b s² + c over the generators.
//!
//! Rendering: `∂^k[coefficient]` joined by ` + `, highest order first;
//! parseable by [`DiffOp::from_str`].

use crate::exppoly::ExpPoly;
use crate::rational::{GaussRational, Rational};
use crate::report::{CheckRecord, CheckStatus, VerificationReport};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiffOpError {
    #[error("invalid generator index {0}; expected 1, 2 or 3")]
    InvalidGammaIndex(u8),
    #[error("operator decomposition identity failed: residual {0}")]
    DecompositionResidual(String),
}

/// Which single-variable realization of the generators to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Realization {
    /// Γᵢ in the s coordinate: Γ₁ = ∂² + α/s² + s²/16, Γ₂ = −(i/2)(s∂ + 1/2), …
    SForm,
    /// Γ̂ᵢ after the substitution s = y³.
    YForm,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realization::SForm => write!(f, "s-form"),
            Realization::YForm => write!(f, "y-form"),
        }
    }
}

/// A linear differential operator with [`ExpPoly`] coefficients.
///
/// Invariant: the map holds no zero coefficients, so the highest stored order
/// is genuinely present and equality is syntactic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    coeffs: BTreeMap<usize, ExpPoly>,
}

impl DiffOp {
    // ---- Constructors ----

    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// The identity operator (order-0 coefficient 1).
    pub fn identity() -> Self {
        DiffOp::single(0, ExpPoly::one())
    }

    /// ∂ᵏ.
    pub fn d(k: usize) -> Self {
        DiffOp::single(k, ExpPoly::one())
    }

    /// c(x)·∂ᵏ.
    pub fn single(order: usize, coeff: ExpPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(order, coeff);
        }
        DiffOp { coeffs }
    }

    /// Multiplication operator by f(x).
    pub fn mul_by(f: ExpPoly) -> Self {
        DiffOp::single(0, f)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (usize, ExpPoly)>) -> Self {
        let mut op = DiffOp::zero();
        for (k, c) in coeffs {
            op.add_coeff(k, c);
        }
        op
    }

    fn add_coeff(&mut self, order: usize, c: ExpPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&order) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.coeffs.remove(&order);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(order, c);
            }
        }
    }

    // ---- Queries ----

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest derivative order present, or None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, order: usize) -> ExpPoly {
        self.coeffs.get(&order).cloned().unwrap_or_else(ExpPoly::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &ExpPoly)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    // ---- Action and composition ----

    /// Apply to a function: Σₖ cₖ·f⁽ᵏ⁾.
    pub fn apply(&self, f: &ExpPoly) -> ExpPoly {
        let mut acc = ExpPoly::zero();
        let mut df = f.clone();
        let mut prev_order = 0usize;
        for (&k, c) in &self.coeffs {
            df = df.derive_n(k - prev_order);
            prev_order = k;
            acc = &acc + &(c * &df);
        }
        acc
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return DiffOp::zero();
        }
        DiffOp {
            coeffs: self.coeffs.iter().map(|(&k, f)| (k, f.scale(c))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&GaussRational::from_rational(r.clone()))
    }

    /// Operator composition A∘B; satisfies (A∘B)(f) = A(B(f)) exactly.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&k, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                // ∂ᵏ∘(b·∂ʲ) = Σᵢ C(k,i) b⁽ⁱ⁾ ∂^{k−i+j}
                let mut binom = Rational::one();
                let mut db = b.clone();
                for i in 0..=k {
                    if i > 0 {
                        // C(k,i) = C(k,i−1)·(k−i+1)/i
                        binom = &(&binom * &Rational::from_int((k - i + 1) as i64))
                            / &Rational::from_int(i as i64);
                        db = db.derive();
                    }
                    let term = (a * &db).scale_rat(&binom);
                    out.add_coeff(k - i + j, term);
                }
            }
        }
        out
    }

    /// A∘B − B∘A.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_coeff(k, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "∂^{k}[{c}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for DiffOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(DiffOp::zero());
        }
        let mut op = DiffOp::zero();
        for part in s.split(" + ∂^") {
            let part = part.strip_prefix("∂^").unwrap_or(part);
            let (order, rest) = part
                .split_once('[')
                .ok_or_else(|| format!("missing '[' in {part:?}"))?;
            let order: usize = order
                .trim()
                .parse()
                .map_err(|_| format!("bad order in {part:?}"))?;
            let body = rest
                .strip_suffix(']')
                .ok_or_else(|| format!("missing ']' in {part:?}"))?;
            op.add_coeff(order, body.parse()?);
        }
        Ok(op)
    }
}

// ---- su(1,1) generators ----

/// Build Γ_index exactly as realized in a single variable.
///
/// s-form: Γ₁ = ∂² + α/s² + s²/16, Γ₂ = −(i/2)(s∂ + 1/2),
/// Γ₃ = ∂² + α/s² − s²/16. y-form (s = y³):
/// Γ̂₁ = (1/(9y⁴))∂² − (2/(9y⁵))∂ + α/y⁶ + y⁶/16, Γ̂₂ = −(i/2)((y/3)∂ + 1/2),
/// Γ̂₃ the same with −y⁶/16.
pub fn make_gamma(index: u8, alpha: &Rational, realization: Realization) -> Result<DiffOp, DiffOpError> {
    let r = |p: i64, q: i64| Rational::new(p, q);
    let mono = |c: Rational, p: Rational| ExpPoly::monomial(c, p);
    let op = match (realization, index) {
        (Realization::SForm, 1) | (Realization::SForm, 3) => {
            let sign = if index == 1 { 1 } else { -1 };
            let zero_order = &mono(alpha.clone(), r(-2, 1)) + &mono(r(sign, 16), r(2, 1));
            DiffOp::from_coeffs([(2, ExpPoly::one()), (0, zero_order)])
        }
        (Realization::SForm, 2) => {
            // −(i/2)(s∂ + 1/2)
            let half_i = GaussRational::new(Rational::zero(), r(-1, 2));
            DiffOp::from_coeffs([
                (1, ExpPoly::x().scale(&half_i)),
                (0, ExpPoly::constant(half_i.scale(&r(1, 2)))),
            ])
        }
        (Realization::YForm, 1) | (Realization::YForm, 3) => {
            let sign = if index == 1 { 1 } else { -1 };
            let zero_order = &mono(alpha.clone(), r(-6, 1)) + &mono(r(sign, 16), r(6, 1));
            DiffOp::from_coeffs([
                (2, mono(r(1, 9), r(-4, 1))),
                (1, mono(r(-2, 9), r(-5, 1))),
                (0, zero_order),
            ])
        }
        (Realization::YForm, 2) => {
            let half_i = GaussRational::new(Rational::zero(), r(-1, 2));
            DiffOp::from_coeffs([
                (1, ExpPoly::x().scale(&half_i.scale(&r(1, 3)))),
                (0, ExpPoly::constant(half_i.scale(&r(1, 2)))),
            ])
        }
        (_, bad) => return Err(DiffOpError::InvalidGammaIndex(bad)),
    };
    Ok(op)
}

/// Check the commutation relations [Γ₁,Γ₂] = −iΓ₃, [Γ₂,Γ₃] = iΓ₁, [Γ₃,Γ₁] = iΓ₂
/// as exact operator identities. Failures become report entries, never panics.
pub fn check_su11(alpha: &Rational, realization: Realization) -> VerificationReport {
    let g1 = make_gamma(1, alpha, realization).expect("index 1 is valid");
    let g2 = make_gamma(2, alpha, realization).expect("index 2 is valid");
    let g3 = make_gamma(3, alpha, realization).expect("index 3 is valid");
    let i = GaussRational::i();
    let cases = [
        ("[Γ1,Γ2] = -i·Γ3", g1.commutator(&g2), g3.scale(&-&i)),
        ("[Γ2,Γ3] = i·Γ1", g2.commutator(&g3), g1.scale(&i)),
        ("[Γ3,Γ1] = i·Γ2", g3.commutator(&g1), g2.scale(&i)),
    ];
    let mut report = VerificationReport::new(format!("su(1,1) relations, α = {alpha}, {realization}"));
    for (name, lhs, rhs) in cases {
        let residual = &lhs - &rhs;
        if residual.is_zero() {
            report.push(CheckRecord::pass(name));
        } else {
            report.push(CheckRecord {
                name: name.to_string(),
                status: CheckStatus::Fail,
                details: format!("residual operator: {residual}"),
            });
        }
    }
    report
}

/// Coefficients expressing ∂² + a/s² + b s² + c over the generators:
/// the operator equals p₁Γ₁ + p₃Γ₃ + shift with α = a.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub p1: Rational,
    pub p3: Rational,
    pub shift: Rational,
}

/// Decompose ∂² + a/s² + b s² + c as (1/2 + 8b)Γ₁ + (1/2 − 8b)Γ₃ + c and verify
/// the identity symbolically. A residual here signals an internal inconsistency.
pub fn decompose_operator(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<Decomposition, DiffOpError> {
    let r = |p: i64, q: i64| Rational::new(p, q);
    let eight_b = &Rational::from_int(8) * b;
    let p1 = &r(1, 2) + &eight_b;
    let p3 = &r(1, 2) - &eight_b;

    let target = DiffOp::from_coeffs([
        (2, ExpPoly::one()),
        (
            0,
            &(&ExpPoly::monomial(a.clone(), r(-2, 1)) + &ExpPoly::monomial(b.clone(), r(2, 1)))
                + &ExpPoly::from_rational(c.clone()),
        ),
    ]);
    let g1 = make_gamma(1, a, Realization::SForm).expect("valid index");
    let g3 = make_gamma(3, a, Realization::SForm).expect("valid index");
    let combo = &(&g1.scale_rat(&p1) + &g3.scale_rat(&p3))
        + &DiffOp::mul_by(ExpPoly::from_rational(c.clone()));
    let residual = &target - &combo;
    if !residual.is_zero() {
        return Err(DiffOpError::DecompositionResidual(residual.to_string()));
    }
    Ok(Decomposition {
        p1,
        p3,
        shift: c.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppoly::ExpArg;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn weyl_relation() {
        // [∂, x∂] = ∂
        let d = DiffOp::d(1);
        let xd = DiffOp::single(1, ExpPoly::x());
        assert_eq!(d.commutator(&xd), d);
    }

    #[test]
    fn commutator_antisymmetry() {
        let a = DiffOp::from_coeffs([(2, ExpPoly::one()), (0, ExpPoly::xpow(r(-2, 1)))]);
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn composition_matches_application() {
        let a = DiffOp::from_coeffs([(1, ExpPoly::x()), (0, ExpPoly::xpow(r(-1, 1)))]);
        let b = DiffOp::from_coeffs([(2, ExpPoly::one()), (1, ExpPoly::xpow(r(2, 1)))]);
        let f = &ExpPoly::xpow(r(5, 2)) + &ExpPoly::term(
            GaussRational::from_int(3),
            r(-1, 1),
            ExpArg::linear(GaussRational::one()),
        );
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn gamma2_applied_to_coordinate() {
        // Γ₂ s = −(i/2)(s·1 + s/2) = −(3i/4)s
        let g2 = make_gamma(2, &r(0, 1), Realization::SForm).unwrap();
        let got = g2.apply(&ExpPoly::x());
        let expected = ExpPoly::x().scale(&GaussRational::new(r(0, 1), r(-3, 4)));
        assert_eq!(got, expected);
    }

    #[test]
    fn gamma1_zero_order_coefficient() {
        let g1 = make_gamma(1, &r(1, 1), Realization::SForm).unwrap();
        let expected = &ExpPoly::xpow(r(-2, 1)) + &ExpPoly::monomial(r(1, 16), r(2, 1));
        assert_eq!(g1.coeff(0), expected);
    }

    #[test]
    fn gamma3_yform_leading_coefficient() {
        let g3 = make_gamma(3, &r(0, 1), Realization::YForm).unwrap();
        assert_eq!(g3.coeff(2), ExpPoly::monomial(r(1, 9), r(-4, 1)));
    }

    #[test]
    fn invalid_gamma_index() {
        assert_eq!(
            make_gamma(4, &r(0, 1), Realization::SForm),
            Err(DiffOpError::InvalidGammaIndex(4))
        );
    }

    #[test]
    fn su11_relations_hold_in_both_realizations() {
        for alpha in [r(0, 1), r(-15, 16), r(1, 1)] {
            for real in [Realization::SForm, Realization::YForm] {
                let report = check_su11(&alpha, real);
                assert!(report.all_pass(), "failed: {report:?}");
            }
        }
    }

    #[test]
    fn su11_commutator_content() {
        // [Γ₁, Γ₂] with α = 0 equals −iΓ₃ on the nose
        let g1 = make_gamma(1, &r(0, 1), Realization::SForm).unwrap();
        let g2 = make_gamma(2, &r(0, 1), Realization::SForm).unwrap();
        let g3 = make_gamma(3, &r(0, 1), Realization::SForm).unwrap();
        assert_eq!(g1.commutator(&g2), g3.scale(&-&GaussRational::i()));
    }

    #[test]
    fn decompose_examples() {
        // b = 1/16: 8b = 1/2, so (p1, p3) = (1, 0): the operator IS Γ₁ at α = 0
        let d = decompose_operator(&r(0, 1), &r(1, 16), &r(0, 1)).unwrap();
        assert_eq!((d.p1, d.p3, d.shift), (r(1, 1), r(0, 1), r(0, 1)));

        let d = decompose_operator(&r(-15, 4), &r(-1, 1), &r(2, 1)).unwrap();
        assert_eq!((d.p1, d.p3, d.shift), (r(-15, 2), r(17, 2), r(2, 1)));

        // ∂² = (Γ₁+Γ₃)/2 at α = 0
        let d = decompose_operator(&r(0, 1), &r(0, 1), &r(0, 1)).unwrap();
        assert_eq!((d.p1, d.p3, d.shift), (r(1, 2), r(1, 2), r(0, 1)));
    }

    #[test]
    fn diffop_display_round_trip() {
        let op = DiffOp::from_coeffs([
            (2, ExpPoly::one()),
            (0, &ExpPoly::xpow(r(-2, 1)) + &ExpPoly::monomial(r(1, 16), r(2, 1))),
        ]);
        let s = op.to_string();
        let back: DiffOp = s.parse().unwrap();
        assert_eq!(back, op);
        assert_eq!("0".parse::<DiffOp>().unwrap(), DiffOp::zero());
    }
}
