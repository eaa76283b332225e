//! Vector fields on the line and the extended X/Y/Z algebra.
//!
//! With the D = 1/2 closed-form solution in hand, the symmetry generators
//! extend to the family
//!
//! ```text
//! X = 2D·∂ₓ,   Y₋ₙ = x^{−n}·∂ₓ,   Z₋ₙ = (eˣ/xⁿ)·∂ₓ
//! ```
//!
//! whose commutation table is verified here exactly. The table does not close:
//! [Z₋ₘ, Z₋ₙ] carries an e²ˣ coefficient that no rational combination of the
//! basis can produce, and iterated two-component commutators of the symmetry
//! fields leave the ξ = uα + β ansatz shape. Both obstructions are certified
//! with exact linear algebra over the term basis.

use crate::exppoly::{ExpArg, ExpPoly, ExpTerm};
use crate::linalg;
use crate::rational::{GaussRational, Rational};
use crate::report::{CheckRecord, VerificationReport};
use crate::symmetry::{UPoly, VectorField};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// f(x)·∂ₓ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineField {
    pub coeff: ExpPoly,
}

impl LineField {
    pub fn new(coeff: ExpPoly) -> Self {
        LineField { coeff }
    }

    pub fn zero() -> Self {
        LineField::new(ExpPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        LineField::new(self.coeff.scale_rat(r))
    }
}

impl fmt::Display for LineField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]·∂x", self.coeff)
    }
}

/// [f∂, g∂] = (fg′ − gf′)∂.
pub fn vf_commutator(a: &LineField, b: &LineField) -> LineField {
    LineField::new(&(&a.coeff * &b.coeff.derive()) - &(&b.coeff * &a.coeff.derive()))
}

/// Labeled basis {X} ∪ {Y₋₀..Y₋ₘ} ∪ {Z₋₀..Z₋ₘ}.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    pub elements: Vec<(String, LineField)>,
}

/// Y₋ₙ = x^{−n}∂ₓ.
pub fn y_field(n: i64) -> LineField {
    LineField::new(ExpPoly::xpow(Rational::from_int(-n)))
}

/// Z₋ₙ = eˣ·x^{−n}∂ₓ.
pub fn z_field(n: i64) -> LineField {
    LineField::new(ExpPoly::term(
        GaussRational::one(),
        Rational::from_int(-n),
        ExpArg::linear(GaussRational::one()),
    ))
}

/// X = 2D·∂ₓ (the literal table has D = 1/2, where X = ∂ₓ = Y₋₀; both labels
/// are kept).
pub fn x_field(d: &Rational) -> LineField {
    LineField::new(ExpPoly::from_rational(&Rational::from_int(2) * d))
}

pub fn make_generators(d: &Rational, max_n: u32) -> SpanBasis {
    let mut elements = vec![("X".to_string(), x_field(d))];
    for n in 0..=max_n as i64 {
        elements.push((format!("Y-{n}"), y_field(n)));
    }
    for n in 0..=max_n as i64 {
        elements.push((format!("Z-{n}"), z_field(n)));
    }
    SpanBasis { elements }
}

/// Verify the five commutation families exactly for 0 ≤ m, n ≤ max_n:
///
/// ```text
/// [Y₋ₙ, X]    = 2D·n·Y₋ₙ₋₁
/// [Z₋ₙ, X]    = 2D·(−Z₋ₙ + n·Z₋ₙ₋₁)
/// [Y₋ₙ, Y₋ₘ]  = (n−m)·Y₋₍ₙ₊ₘ₊₁₎
/// [Z₋ₘ, Y₋ₙ]  = (m−n)·Z₋₍ₙ₊ₘ₊₁₎ − Z₋₍ₘ₊ₙ₎
/// [Z₋ₘ, Z₋ₙ]  = (m−n)·e²ˣ·x^{−(n+m+1)}·∂ₓ   (the eˣ-scaled element)
/// ```
///
/// The literal table (coefficients n·Y₋ₙ₋₁ etc. without the 2D factor) holds
/// exactly when 2D = 1; both readings are recorded.
pub fn verify_relations(d: &Rational, max_n: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "extended algebra commutation table, D = {d}, 0 ≤ m,n ≤ {max_n}"
    ));
    let two_d = &Rational::from_int(2) * d;
    let x = x_field(d);

    let mut push_identity = |name: String, got: &LineField, expect: &LineField| {
        if got == expect {
            report.push(CheckRecord::pass(name));
        } else {
            report.push(CheckRecord::fail(
                name,
                format!("got {got}, expected {expect}"),
            ));
        }
    };

    for n in 0..=max_n as i64 {
        let got = vf_commutator(&y_field(n), &x);
        let expect = y_field(n + 1).scale_rat(&(&two_d * &Rational::from_int(n)));
        push_identity(format!("[Y-{n}, X] = 2D·{n}·Y-{}", n + 1), &got, &expect);

        let got = vf_commutator(&z_field(n), &x);
        let expect = LineField::new(
            &z_field(n + 1).coeff.scale_rat(&Rational::from_int(n))
                - &z_field(n).coeff,
        )
        .scale_rat(&two_d);
        push_identity(
            format!("[Z-{n}, X] = 2D·(−Z-{n} + {n}·Z-{})", n + 1),
            &got,
            &expect,
        );
    }

    for n in 0..=max_n as i64 {
        for m in 0..=max_n as i64 {
            let got = vf_commutator(&y_field(n), &y_field(m));
            let expect = y_field(n + m + 1).scale_rat(&Rational::from_int(n - m));
            push_identity(
                format!("[Y-{n}, Y-{m}] = ({n}−{m})·Y-{}", n + m + 1),
                &got,
                &expect,
            );

            let got = vf_commutator(&z_field(m), &y_field(n));
            let expect = LineField::new(
                &z_field(n + m + 1).coeff.scale_rat(&Rational::from_int(m - n))
                    - &z_field(m + n).coeff,
            );
            push_identity(
                format!("[Z-{m}, Y-{n}] = ({m}−{n})·Z-{} − Z-{}", n + m + 1, m + n),
                &got,
                &expect,
            );

            let got = vf_commutator(&z_field(m), &z_field(n));
            // (m−n)·e²ˣ·x^{−(n+m+1)}
            let expect = LineField::new(ExpPoly::term(
                GaussRational::from_int(m - n),
                Rational::from_int(-(n + m + 1)),
                ExpArg::linear(GaussRational::from_int(2)),
            ));
            push_identity(
                format!("[Z-{m}, Z-{n}] = ({m}−{n})·e²ˣ·x^(−{})·∂x", n + m + 1),
                &got,
                &expect,
            );
        }
    }

    // the literal table [Y-n, X] = n·Y-n-1 is the 2D = 1 slice
    let literal_holds = two_d == Rational::one();
    let sample = vf_commutator(&y_field(1), &x);
    let literal_expect = y_field(2);
    let sample_matches = sample == literal_expect;
    report.push(CheckRecord::of(
        format!("literal (unscaled) table reading at D = {d}"),
        literal_holds == sample_matches,
        "literal-reading probe disagrees with 2D = 1 criterion",
    ));
    if !literal_holds {
        report.push(CheckRecord::pass(format!(
            "note: literal coefficients hold only at D = 1/2; at D = {d} the table carries the 2D factor"
        )));
    }
    report
}

/// Outcome of the exact span test.
#[derive(Clone, Debug, Serialize)]
pub struct SpanResult {
    pub in_span: bool,
    /// Rational combination over the labeled basis when `in_span`.
    pub certificate: Vec<(String, String)>,
    /// A term of the candidate outside the basis span otherwise (e.g. e²ˣ·x⁻⁴).
    pub offending_term: Option<String>,
}

fn term_key(t: &ExpTerm) -> (ExpArg, Rational) {
    (t.arg.clone(), t.power.clone())
}

/// Exact linear algebra over the term basis: the field lies in the span iff
/// its coefficient vector solves the basis system over the Gaussian rationals.
pub fn span_membership(field: &LineField, basis: &SpanBasis) -> SpanResult {
    // collect every (exponent polynomial, power) key
    let mut keys: BTreeMap<(ExpArg, Rational), usize> = BTreeMap::new();
    for (_, b) in &basis.elements {
        for t in b.coeff.terms() {
            let next = keys.len();
            keys.entry(term_key(t)).or_insert(next);
        }
    }
    // a candidate term whose key no basis element carries is an immediate
    // obstruction
    for t in field.coeff.terms() {
        if !keys.contains_key(&term_key(t)) {
            return SpanResult {
                in_span: false,
                certificate: Vec::new(),
                offending_term: Some(
                    ExpPoly::term(t.coeff.clone(), t.power.clone(), t.arg.clone()).to_string(),
                ),
            };
        }
    }
    let rows = keys.len();
    let cols = basis.elements.len();
    let mut a = vec![vec![GaussRational::zero(); cols]; rows];
    for (j, (_, b)) in basis.elements.iter().enumerate() {
        for t in b.coeff.terms() {
            a[keys[&term_key(t)]][j] = t.coeff.clone();
        }
    }
    let mut rhs = vec![GaussRational::zero(); rows];
    for t in field.coeff.terms() {
        rhs[keys[&term_key(t)]] = t.coeff.clone();
    }
    match linalg::solve(&a, &rhs) {
        Some(x) => SpanResult {
            in_span: true,
            certificate: basis
                .elements
                .iter()
                .zip(&x)
                .filter(|(_, c)| !c.is_zero())
                .map(|((label, _), c)| (label.clone(), c.to_string()))
                .collect(),
            offending_term: None,
        },
        None => {
            // inconsistent system: report the first candidate term that the
            // basis cannot reproduce (exact certificate of non-membership)
            SpanResult {
                in_span: false,
                certificate: Vec::new(),
                offending_term: field
                    .coeff
                    .terms()
                    .first()
                    .map(|t| ExpPoly::term(t.coeff.clone(), t.power.clone(), t.arg.clone()).to_string()),
            }
        }
    }
}

/// Commutator of two-component fields A = ξ∂ₓ + η∂ᵤ:
/// [A, B] has ξ = A(B.ξ) − B(A.ξ) and η = A(B.η) − B(A.η) where a field acts
/// on a function of (x, u) as ξ∂ₓ + η∂ᵤ. Exact; u-degrees may grow.
pub fn vf2_commutator(a: &VectorField, b: &VectorField) -> VectorField {
    let act = |f: &VectorField, g: &UPoly| -> UPoly {
        f.xi.mul(&g.derive_x()).add(&f.eta.mul(&g.derive_u()))
    };
    VectorField::new(
        act(a, &b.xi).sub(&act(b, &a.xi)),
        act(a, &b.eta).sub(&act(b, &a.eta)),
    )
}
