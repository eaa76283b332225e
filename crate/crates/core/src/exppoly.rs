//! The exp-monomial function ring: finite sums of terms q·x^r·e^{P(x)}.
//!
//! `q` is a Gaussian rational, `r` a rational power, and `P` a polynomial with
//! Gaussian-rational coefficients, degree ≤ 2 and zero constant term. The ring
//! is closed under addition, multiplication and differentiation, and it contains
//! every coordinate function the analysis needs: Laurent monomials x^{-n},
//! e^x·x^{-n}, e^{x/2}x^{-1/2}, Gaussians e^{-x²/2}·(polynomial), and the
//! complex exponentials e^{±ix}, e^{±2ix} that encode sin and cos.
//!
//! Canonical form: terms are sorted by the key (exponent polynomial, power),
//! no two terms share a key, and no stored coefficient is zero. Equality is
//! therefore syntactic, and `is_zero` means "no terms".
//!
//! # Rendering grammar
//!
//! `Display` emits a stable text form that [`ExpPoly::from_str`] parses back:
//!
//! ```text
//! exppoly := "0" | term { " + " term }
//! term    := "(" gauss ")" [ "·x^(" rational ")" ] [ "·exp(" exparg ")" ]
//! exparg  := part { "+" part }
//! part    := "(" gauss ")x" | "(" gauss ")x^2"
//! gauss   := rational | rational "i" | rational SIGNED-rational "i"
//! ```
//!
//! e.g. `(1/2)·x^(-1/2)·exp((1/2)x)` or `(1)·exp((-1/2)x^2)`.

use crate::rational::{GaussRational, Rational};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Exponent polynomial P(x) = linear·x + quadratic·x² (zero constant term).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExpArg {
    pub quadratic: GaussRational,
    pub linear: GaussRational,
}

impl ExpArg {
    pub fn zero() -> Self {
        ExpArg {
            quadratic: GaussRational::zero(),
            linear: GaussRational::zero(),
        }
    }

    pub fn linear(l: GaussRational) -> Self {
        ExpArg {
            quadratic: GaussRational::zero(),
            linear: l,
        }
    }

    pub fn new(linear: GaussRational, quadratic: GaussRational) -> Self {
        ExpArg { quadratic, linear }
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_zero() && self.quadratic.is_zero()
    }

    fn add(&self, other: &ExpArg) -> ExpArg {
        ExpArg {
            quadratic: &self.quadratic + &other.quadratic,
            linear: &self.linear + &other.linear,
        }
    }

    fn eval(&self, x: f64) -> Complex64 {
        self.linear.to_complex_f64() * x + self.quadratic.to_complex_f64() * x * x
    }
}

/// One monomial q·x^r·e^{P(x)} with q ≠ 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpTerm {
    pub coeff: GaussRational,
    pub power: Rational,
    pub arg: ExpArg,
}

/// Canonical finite sum of [`ExpTerm`]s.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    // ---- Constructors ----

    pub fn zero() -> Self {
        ExpPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        ExpPoly::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        ExpPoly::term(c, Rational::zero(), ExpArg::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        ExpPoly::constant(GaussRational::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        ExpPoly::from_rational(Rational::from_int(n))
    }

    /// The coordinate function x.
    pub fn x() -> Self {
        ExpPoly::xpow(Rational::one())
    }

    /// x^r.
    pub fn xpow(r: Rational) -> Self {
        ExpPoly::term(GaussRational::one(), r, ExpArg::zero())
    }

    /// c·x^r with rational c.
    pub fn monomial(c: Rational, r: Rational) -> Self {
        ExpPoly::term(GaussRational::from_rational(c), r, ExpArg::zero())
    }

    /// The general single term q·x^r·e^{P}.
    pub fn term(coeff: GaussRational, power: Rational, arg: ExpArg) -> Self {
        if coeff.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: vec![ExpTerm { coeff, power, arg }],
        }
    }

    pub fn from_terms(terms: Vec<ExpTerm>) -> Self {
        Self::normalize(terms)
    }

    /// sin(k·x), represented as (e^{ikx} − e^{−ikx})/(2i).
    pub fn sin(k: Rational) -> Self {
        let ik = GaussRational::new(Rational::zero(), k.clone());
        let half_over_i = GaussRational::new(Rational::zero(), Rational::new(-1, 2)); // 1/(2i)
        let plus = ExpPoly::term(half_over_i.clone(), Rational::zero(), ExpArg::linear(ik.clone()));
        let minus = ExpPoly::term(half_over_i, Rational::zero(), ExpArg::linear(-&ik));
        &plus - &minus
    }

    /// cos(k·x), represented as (e^{ikx} + e^{−ikx})/2.
    pub fn cos(k: Rational) -> Self {
        let ik = GaussRational::new(Rational::zero(), k);
        let half = GaussRational::new(Rational::new(1, 2), Rational::zero());
        let plus = ExpPoly::term(half.clone(), Rational::zero(), ExpArg::linear(ik.clone()));
        let minus = ExpPoly::term(half, Rational::zero(), ExpArg::linear(-&ik));
        &plus + &minus
    }

    fn normalize(mut terms: Vec<ExpTerm>) -> Self {
        terms.sort_by(|s, t| (&s.arg, &s.power).cmp(&(&t.arg, &t.power)));
        let mut out: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.arg == t.arg && last.power == t.power => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ExpPoly { terms: out }
    }

    // ---- Queries ----

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every coefficient is real and every exponent polynomial is real.
    pub fn is_real(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coeff.is_real() && t.arg.linear.is_real() && t.arg.quadratic.is_real())
    }

    /// If this is a pure Laurent sum Σ c_l x^{e_l} with rational coefficients,
    /// return the (coefficient, exponent) pairs.
    pub fn as_power_sum(&self) -> Option<Vec<(Rational, Rational)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !t.arg.is_zero() || !t.coeff.is_real() {
                return None;
            }
            out.push((t.coeff.re.clone(), t.power.clone()));
        }
        Some(out)
    }

    // ---- Ring operations ----

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coeff: &t.coeff * c,
                    power: t.power.clone(),
                    arg: t.arg.clone(),
                })
                .collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&GaussRational::from_rational(r.clone()))
    }

    /// Multiply by x^r: powers shift, nothing else changes.
    pub fn mul_xpow(&self, r: &Rational) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coeff: t.coeff.clone(),
                    power: &t.power + r,
                    arg: t.arg.clone(),
                })
                .collect(),
        }
    }

    /// d/dx, term-wise: d(q x^r e^P) = q(r x^{r−1} + P′(x) x^r)e^P.
    pub fn derive(&self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * 3);
        for t in &self.terms {
            if !t.power.is_zero() {
                out.push(ExpTerm {
                    coeff: t.coeff.scale(&t.power),
                    power: &t.power - &Rational::one(),
                    arg: t.arg.clone(),
                });
            }
            // P' = linear + 2·quadratic·x
            if !t.arg.linear.is_zero() {
                out.push(ExpTerm {
                    coeff: &t.coeff * &t.arg.linear,
                    power: t.power.clone(),
                    arg: t.arg.clone(),
                });
            }
            if !t.arg.quadratic.is_zero() {
                out.push(ExpTerm {
                    coeff: &t.coeff * &t.arg.quadratic.scale(&Rational::from_int(2)),
                    power: &t.power + &Rational::one(),
                    arg: t.arg.clone(),
                });
            }
        }
        ExpPoly::normalize(out)
    }

    /// n-th derivative.
    pub fn derive_n(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derive();
        }
        f
    }

    /// Numeric evaluation at x > 0 (used by reports and as a test cross-check;
    /// the symbolic layer never depends on it).
    pub fn eval_f64(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let p = t.power.to_f64();
            let xr = x.powf(p);
            acc += t.coeff.to_complex_f64() * xr * t.arg.eval(x).exp();
        }
        acc
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        ExpPoly::normalize(terms)
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coeff: -&t.coeff,
                    power: t.power.clone(),
                    arg: t.arg.clone(),
                })
                .collect(),
        }
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for s in &self.terms {
            for t in &rhs.terms {
                out.push(ExpTerm {
                    coeff: &s.coeff * &t.coeff,
                    power: &s.power + &t.power,
                    arg: s.arg.add(&t.arg),
                });
            }
        }
        ExpPoly::normalize(out)
    }
}

// ---- Rendering ----

fn write_exparg(f: &mut fmt::Formatter<'_>, arg: &ExpArg) -> fmt::Result {
    let mut first = true;
    if !arg.linear.is_zero() {
        write!(f, "({})x", arg.linear)?;
        first = false;
    }
    if !arg.quadratic.is_zero() {
        if !first {
            write!(f, "+")?;
        }
        write!(f, "({})x^2", arg.quadratic)?;
    }
    Ok(())
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            if !t.power.is_zero() {
                write!(f, "·x^({})", t.power)?;
            }
            if !t.arg.is_zero() {
                write!(f, "·exp(")?;
                write_exparg(f, &t.arg)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- Parsing (inverse of Display, for test fixtures and reports) ----

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), String> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at byte {}", b as char, self.pos))
        }
    }

    fn eat_str(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn parse_rational(&mut self) -> Result<Rational, String> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| format!("{e} at byte {start}"))
    }

    /// gauss := rational ["i"] | rational SIGNED-rational "i"
    fn parse_gauss(&mut self) -> Result<GaussRational, String> {
        let first = self.parse_rational()?;
        if self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok(GaussRational::new(Rational::zero(), first));
        }
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            let save = self.pos;
            let second = self.parse_rational()?;
            if self.peek() == Some(b'i') {
                self.pos += 1;
                return Ok(GaussRational::new(first, second));
            }
            self.pos = save;
        }
        Ok(GaussRational::from_rational(first))
    }

    fn parse_paren_gauss(&mut self) -> Result<GaussRational, String> {
        self.eat(b'(')?;
        let g = self.parse_gauss()?;
        self.eat(b')')?;
        Ok(g)
    }

    fn parse_exparg(&mut self) -> Result<ExpArg, String> {
        let mut linear = GaussRational::zero();
        let mut quadratic = GaussRational::zero();
        loop {
            let c = self.parse_paren_gauss()?;
            self.eat(b'x')?;
            if self.eat_str("^2") {
                quadratic = &quadratic + &c;
            } else {
                linear = &linear + &c;
            }
            if self.peek() == Some(b'+') && self.s.get(self.pos + 1) == Some(&b'(') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(ExpArg { quadratic, linear })
    }

    fn parse_term(&mut self) -> Result<ExpTerm, String> {
        let coeff = self.parse_paren_gauss()?;
        let mut power = Rational::zero();
        let mut arg = ExpArg::zero();
        while self.eat_str("·") {
            if self.eat_str("x^(") {
                power = self.parse_rational()?;
                self.eat(b')')?;
            } else if self.eat_str("exp(") {
                arg = self.parse_exparg()?;
                self.eat(b')')?;
            } else {
                return Err(format!("expected x^ or exp at byte {}", self.pos));
            }
        }
        Ok(ExpTerm { coeff, power, arg })
    }

    fn parse_poly(&mut self) -> Result<ExpPoly, String> {
        if self.s == b"0" {
            self.pos = 1;
            return Ok(ExpPoly::zero());
        }
        let mut terms = vec![self.parse_term()?];
        while self.eat_str(" + ") {
            terms.push(self.parse_term()?);
        }
        Ok(ExpPoly::from_terms(terms))
    }
}

impl FromStr for ExpPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s.trim());
        let poly = p.parse_poly()?;
        if p.pos != p.s.len() {
            return Err(format!("trailing input at byte {}", p.pos));
        }
        Ok(poly)
    }
}
