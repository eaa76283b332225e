//! The spectrum pipeline for u″ + (C/x² + D/x + Ê)u = 0.
//!
//! Maps (C, D, Ê) to the oscillator-form coefficients (a, b, c), evaluates the
//! tilt angle and the quantization condition 4n + 2 ± √(1−4a) = c/√(−b), and
//! produces the discrete levels
//!
//! ```text
//! Ê = −D² / [(2n+1) ± √(1−4C)]²
//! ```
//!
//! together with the continuous-spectrum value λ = −c/(4√(−b)). The square-root
//! branch is always an explicit caller choice: `Plus` is the principal
//! (normalizable, Coulomb-consistent) branch, `Minus` the enhanced-symmetry
//! branch used throughout the symmetry analysis.
//!
//! Note on the printed eigenvalue formula: the source formula shows √(1−4c),
//! but re-deriving from the quantization condition with a = (16C−3)/4, b = 4Ê,
//! c = 4D gives √(1−4C) (1−4a = 4(1−4C) and c/√(−b) = 2D/√(−Ê)). This module
//! uses C; reports carry the discrepancy note (see [`PAPER_DISCREPANCIES`]).

use crate::algebraic::{QuadExt, SqrtSum};
use crate::rational::Rational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Known typos in the source formulas, surfaced in reports so downstream users
/// see them without reading code.
pub const PAPER_DISCREPANCIES: &[&str] = &[
    "eigenvalue formula prints sqrt(1-4c); the quantization condition gives sqrt(1-4C)",
    "cube-root realization prints 1/(9x^4), 2/(9x^5) in Γ̂₃; consistent su(1,1) relations require y in place of x",
    "p=2/3 transformed equation prints -5/(36y^2) and bare a, c coefficients; the derived form has +5/36 and factors 4/9 on a and c",
    "N=2 ansatz prints g1 = 2D·g2; the exact linear system gives g1 = D·g2 (C = -2 and E = -D^2/4 confirmed)",
    "determining-equation line prints 2γ' - 2β''; integrating the u' coefficient requires 2γ' = β''",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("radial problem has no spectral parameter Ê")]
    MissingEnergy,
    #[error("1 - 4C = {0} is negative: square root is complex")]
    ComplexRoot(Rational),
    #[error("D = {0} must be positive: the quantization condition needs c/√(−b) > 0")]
    NonpositiveD(Rational),
    #[error("branch denominator (2n+1) − √(1−4C) is not positive at n = {0}")]
    BranchDenominator(u32),
    #[error("b = {0} must be negative for a bound-state condition")]
    NonNegativeB(Rational),
    #[error("tilt angle undefined at b = {0} (denominator 1/2 ∓ 8b vanishes)")]
    TiltDivisionByZero(Rational),
}

/// The equation u″ + (C/x² + D/x + Ê)u = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialProblem {
    pub c: Rational,
    pub d: Rational,
    pub e_hat: Option<Rational>,
}

impl RadialProblem {
    pub fn new(c: Rational, d: Rational, e_hat: Option<Rational>) -> Self {
        RadialProblem { c, d, e_hat }
    }
}

/// Coefficients of the oscillator form R″ + (a/s² + b s² + c)R = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SgaCoefficients {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// Sign applied to √(1−4C) in the level formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(&self) -> i32 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Plus => write!(f, "plus"),
            Branch::Minus => write!(f, "minus"),
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(format!("unknown branch {other:?}; expected plus or minus")),
        }
    }
}

/// An exact energy: rational when √(1−4C) is, otherwise a quadratic algebraic
/// value carrying a certified enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnergyValue {
    Rational(Rational),
    Algebraic(QuadExt),
}

impl EnergyValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            EnergyValue::Rational(r) => r.to_f64(),
            EnergyValue::Algebraic(q) => q.to_f64(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            EnergyValue::Rational(r) => Some(r),
            EnergyValue::Algebraic(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            EnergyValue::Rational(r) => r.signum(),
            EnergyValue::Algebraic(q) => q.signum(),
        }
    }
}

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyValue::Rational(r) => write!(f, "{r}"),
            EnergyValue::Algebraic(q) => write!(f, "{q}"),
        }
    }
}

/// Enclosure width used when serializing algebraic energies: 10⁻¹².
fn enclosure_width() -> Rational {
    Rational::new(1, 1_000_000_000_000)
}

impl Serialize for EnergyValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            EnergyValue::Rational(r) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("num", &r.numer().to_string())?;
                map.serialize_entry("den", &r.denom().to_string())?;
                map.end()
            }
            EnergyValue::Algebraic(q) => {
                let (lo, hi) = q.enclosure(&enclosure_width());
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("algebraic", &q.to_string())?;
                map.serialize_entry("enclosure", &[lo.to_string(), hi.to_string()])?;
                map.end()
            }
        }
    }
}

/// One discrete level: Ê < 0, with the branch that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyLevel {
    pub n: u32,
    pub branch: Branch,
    #[serde(rename = "E_hat")]
    pub e_hat: EnergyValue,
}

/// The coefficient map of the change of variables x = s², u = s^{1/2}R:
/// a = (16C − 3)/4, b = 4Ê, c = 4D.
pub fn to_abc(problem: &RadialProblem) -> Result<SgaCoefficients, SpectrumError> {
    let e = problem.e_hat.as_ref().ok_or(SpectrumError::MissingEnergy)?;
    Ok(abc_from_parts(&problem.c, &problem.d, e))
}

pub fn abc_from_parts(c: &Rational, d: &Rational, e_hat: &Rational) -> SgaCoefficients {
    let sixteen = Rational::from_int(16);
    let four = Rational::from_int(4);
    SgaCoefficients {
        a: &(&(&sixteen * c) - &Rational::from_int(3)) / &four,
        b: &four * e_hat,
        c: &four * d,
    }
}

/// Discrete eigenvalue Ê = −D²/[(2n+1) ± √(1−4C)]².
///
/// Exact: rational when 1−4C is a perfect square, otherwise an element of
/// Q(√(1−4C)). Preconditions are enforced as errors, not NaNs: 1−4C ≥ 0,
/// D > 0 and, on the minus branch, (2n+1) − √(1−4C) > 0.
pub fn discrete_energy(
    c: &Rational,
    d: &Rational,
    n: u32,
    branch: Branch,
) -> Result<EnergyLevel, SpectrumError> {
    if !d.is_positive() {
        return Err(SpectrumError::NonpositiveD(d.clone()));
    }
    let disc = &Rational::one() - &(&Rational::from_int(4) * c);
    if disc.is_negative() {
        return Err(SpectrumError::ComplexRoot(disc));
    }
    let k = Rational::from_int(2 * n as i64 + 1);
    // denom = (2n+1) ± √(1−4C) as an exact quadratic value
    let root = QuadExt::sqrt(disc.clone());
    let denom = match branch {
        Branch::Plus => QuadExt::from_rational(k.clone()).add(&root),
        Branch::Minus => QuadExt::from_rational(k.clone()).sub(&root),
    };
    if denom.signum() <= 0 {
        return Err(SpectrumError::BranchDenominator(n));
    }
    let d2 = QuadExt::from_rational(&(d * d) * &Rational::from_int(-1));
    let e = d2.mul(&denom.mul(&denom).recip());
    let e_hat = match e.as_rational() {
        Some(r) => EnergyValue::Rational(r.clone()),
        None => EnergyValue::Algebraic(e),
    };
    debug_assert!(e_hat.signum() < 0);
    Ok(EnergyLevel { n, branch, e_hat })
}

/// The quantization defect (4n + 2 ± √(1−4a)) − c/√(−b) as an exact value;
/// zero iff (a, b, c, n) satisfies the condition on that branch.
pub fn quantization_residual(
    co: &SgaCoefficients,
    n: u32,
    branch: Branch,
) -> Result<SqrtSum, SpectrumError> {
    if !co.b.is_negative() {
        return Err(SpectrumError::NonNegativeB(co.b.clone()));
    }
    let disc = &Rational::one() - &(&Rational::from_int(4) * &co.a);
    if disc.is_negative() {
        return Err(SpectrumError::ComplexRoot(disc));
    }
    let base = Rational::from_int(4 * n as i64 + 2);
    let sign = Rational::from_int(branch.sign() as i64);
    // c/√(−b) = (c/(−b))·√(−b)
    let neg_b = -&co.b;
    let c_over = &co.c / &neg_b;
    Ok(SqrtSum::new(
        base,
        vec![(sign, disc), (-&c_over, neg_b)],
    ))
}

/// Spectrum mode for the tilt angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TiltMode {
    /// Diagonalize the compact generator: tanh θ = −(1/2 + 8b)/(1/2 − 8b).
    Discrete,
    /// Diagonalize the noncompact generator: tanh θ = −(1/2 − 8b)/(1/2 + 8b).
    Continuous,
}

/// tanh θ of the tilting transformation. |tanh θ| ≥ 1 means the requested mode
/// is not the valid one for this b; callers flag that in reports.
pub fn tilt_theta(b: &Rational, mode: TiltMode) -> Result<Rational, SpectrumError> {
    let half = Rational::new(1, 2);
    let eight_b = &Rational::from_int(8) * b;
    let plus = &half + &eight_b;
    let minus = &half - &eight_b;
    let (num, den) = match mode {
        TiltMode::Discrete => (plus, minus),
        TiltMode::Continuous => (minus, plus),
    };
    if den.is_zero() {
        return Err(SpectrumError::TiltDivisionByZero(b.clone()));
    }
    Ok(-&(&num / &den))
}

/// Continuous-spectrum value λ = −c/(4√(−b)), for b < 0.
pub fn continuous_lambda(b: &Rational, c: &Rational) -> Result<QuadExt, SpectrumError> {
    if !b.is_negative() {
        return Err(SpectrumError::NonNegativeB(b.clone()));
    }
    let neg_b = -b;
    // −c/(4√(−b)) = (−c/(4(−b)))·√(−b)
    let coef = &(-c) / &(&Rational::from_int(4) * &neg_b);
    Ok(QuadExt::new(Rational::zero(), coef, neg_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn to_abc_examples() {
        let co = to_abc(&RadialProblem::new(r(-3, 4), r(1, 2), Some(r(-1, 4)))).unwrap();
        assert_eq!((co.a, co.b, co.c), (r(-15, 4), r(-1, 1), r(2, 1)));

        let co = to_abc(&RadialProblem::new(r(3, 16), r(0, 1), Some(r(0, 1)))).unwrap();
        assert_eq!((co.a, co.b, co.c), (r(0, 1), r(0, 1), r(0, 1)));

        let co = to_abc(&RadialProblem::new(r(0, 1), r(1, 1), Some(r(-1, 4)))).unwrap();
        assert_eq!((co.a, co.b, co.c), (r(-3, 4), r(-1, 1), r(4, 1)));

        assert_eq!(
            to_abc(&RadialProblem::new(r(0, 1), r(1, 1), None)),
            Err(SpectrumError::MissingEnergy)
        );
    }

    #[test]
    fn discrete_energy_paper_cases() {
        // C = −3/4, D = 1, n = 1, minus branch: √(1−4C) = 2, Ê = −1/(3−2)² = −1
        let lvl = discrete_energy(&r(-3, 4), &r(1, 1), 1, Branch::Minus).unwrap();
        assert_eq!(lvl.e_hat, EnergyValue::Rational(r(-1, 1)));

        // C = −2, D = 1, n = 2, minus: √9 = 3, Ê = −1/(5−3)² = −1/4
        let lvl = discrete_energy(&r(-2, 1), &r(1, 1), 2, Branch::Minus).unwrap();
        assert_eq!(lvl.e_hat, EnergyValue::Rational(r(-1, 4)));

        // C = 0, D = 1, n = 0, plus: Ê = −1/(1+1)² = −1/4
        let lvl = discrete_energy(&r(0, 1), &r(1, 1), 0, Branch::Plus).unwrap();
        assert_eq!(lvl.e_hat, EnergyValue::Rational(r(-1, 4)));
    }

    #[test]
    fn discrete_energy_gates() {
        assert_eq!(
            discrete_energy(&r(1, 1), &r(1, 1), 0, Branch::Plus),
            Err(SpectrumError::ComplexRoot(r(-3, 1)))
        );
        assert_eq!(
            discrete_energy(&r(0, 1), &r(-1, 1), 0, Branch::Plus),
            Err(SpectrumError::NonpositiveD(r(-1, 1)))
        );
        // minus branch with (2n+1) − √(1−4C) ≤ 0: C = −3/4 gives √ = 2 > 1 at n = 0
        assert_eq!(
            discrete_energy(&r(-3, 4), &r(1, 1), 0, Branch::Minus),
            Err(SpectrumError::BranchDenominator(0))
        );
    }

    #[test]
    fn discrete_energy_irrational_case() {
        // C = −1/4: √(1−4C) = √2; n=0 plus: Ê = −1/(1+√2)² = −(3−2√2)
        let lvl = discrete_energy(&r(-1, 4), &r(1, 1), 0, Branch::Plus).unwrap();
        match &lvl.e_hat {
            EnergyValue::Algebraic(q) => {
                assert_eq!(*q, QuadExt::new(r(-3, 1), r(2, 1), r(2, 1)));
                let (lo, hi) = q.enclosure(&r(1, 1_000_000_000_000));
                assert!(&hi - &lo <= r(1, 1_000_000_000_000));
                let v = lvl.e_hat.to_f64();
                assert!(lo.to_f64() <= v && v <= hi.to_f64() + 1e-15);
            }
            other => panic!("expected algebraic energy, got {other:?}"),
        }
    }

    #[test]
    fn quantization_residual_examples() {
        // (a=−15/4, b=−1, c=2), n=1, minus → 0
        let co = SgaCoefficients { a: r(-15, 4), b: r(-1, 1), c: r(2, 1) };
        assert!(quantization_residual(&co, 1, Branch::Minus).unwrap().is_zero());

        // (a=−3/4, b=−1, c=4), n=0, plus → 0
        let co = SgaCoefficients { a: r(-3, 4), b: r(-1, 1), c: r(4, 1) };
        assert!(quantization_residual(&co, 0, Branch::Plus).unwrap().is_zero());

        // (a=0, b=−1, c=0), n=0, plus → 3
        let co = SgaCoefficients { a: r(0, 1), b: r(-1, 1), c: r(0, 1) };
        let res = quantization_residual(&co, 0, Branch::Plus).unwrap();
        assert_eq!(res, SqrtSum::from_rational(r(3, 1)));

        // b ≥ 0 is an error
        let co = SgaCoefficients { a: r(0, 1), b: r(0, 1), c: r(0, 1) };
        assert!(quantization_residual(&co, 0, Branch::Plus).is_err());
    }

    #[test]
    fn round_trip_energy_satisfies_quantization() {
        for (c, d, n, branch) in [
            (r(0, 1), r(1, 1), 0, Branch::Plus),
            (r(0, 1), r(3, 2), 2, Branch::Plus),
            (r(-3, 4), r(1, 1), 1, Branch::Minus),
            (r(-2, 1), r(5, 7), 2, Branch::Minus),
            (r(-15, 4), r(1, 3), 3, Branch::Minus),
        ] {
            let lvl = discrete_energy(&c, &d, n, branch).unwrap();
            let e = lvl.e_hat.as_rational().expect("rational case").clone();
            let co = abc_from_parts(&c, &d, &e);
            let res = quantization_residual(&co, n, branch).unwrap();
            assert!(res.is_zero(), "nonzero residual {res} for C={c}, D={d}, n={n}");
        }
    }

    #[test]
    fn tilt_values() {
        assert_eq!(tilt_theta(&r(-1, 1), TiltMode::Discrete).unwrap(), r(15, 17));
        assert_eq!(tilt_theta(&r(0, 1), TiltMode::Discrete).unwrap(), r(-1, 1));
        assert_eq!(tilt_theta(&r(-1, 1), TiltMode::Continuous).unwrap(), r(17, 15));
        assert!(matches!(
            tilt_theta(&r(1, 16), TiltMode::Discrete),
            Err(SpectrumError::TiltDivisionByZero(_))
        ));
        assert!(matches!(
            tilt_theta(&r(-1, 16), TiltMode::Continuous),
            Err(SpectrumError::TiltDivisionByZero(_))
        ));
    }

    #[test]
    fn continuous_lambda_values() {
        // (b=−1, c=2) → −1/2
        assert_eq!(
            continuous_lambda(&r(-1, 1), &r(2, 1)).unwrap(),
            QuadExt::from_rational(r(-1, 2))
        );
        assert_eq!(
            continuous_lambda(&r(-1, 1), &r(0, 1)).unwrap(),
            QuadExt::from_rational(r(0, 1))
        );
        // (b=−4, c=4) → −4/(4·2) = −1/2
        assert_eq!(
            continuous_lambda(&r(-4, 1), &r(4, 1)).unwrap(),
            QuadExt::from_rational(r(-1, 2))
        );
        assert!(continuous_lambda(&r(1, 1), &r(1, 1)).is_err());
    }

    #[test]
    fn energy_level_json_shape() {
        let lvl = discrete_energy(&r(0, 1), &r(1, 1), 0, Branch::Plus).unwrap();
        let json = serde_json::to_value(&lvl).unwrap();
        assert_eq!(json["n"], 0);
        assert_eq!(json["branch"], "plus");
        assert_eq!(json["E_hat"]["num"], "-1");
        assert_eq!(json["E_hat"]["den"], "4");

        let lvl = discrete_energy(&r(-1, 4), &r(1, 1), 0, Branch::Plus).unwrap();
        let json = serde_json::to_value(&lvl).unwrap();
        assert!(json["E_hat"]["algebraic"].is_string());
        assert_eq!(json["E_hat"]["enclosure"].as_array().unwrap().len(), 2);
    }
}
