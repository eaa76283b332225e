//! The isospectral class of transformed equations.
//!
//! Starting from the oscillator form R″ + (a/s² + b s² + c)R = 0, the
//! substitution s = x^p with R = x^{(p−1)/2}u produces, for every rational
//! p > 0,
//!
//! ```text
//! u″ + [ −(p²−1)/(4x²) + p²(a/x² + b x^{4p−2} + c x^{2p−2}) ] u = 0
//! ```
//!
//! with no first-derivative term; all members share the quantization condition
//! of the original problem. p = 3 and p = 2/3 reproduce the worked special
//! cases, and p = 1/2 undoes the original x = s² substitution, landing back on
//! the radial problem.
//!
//! The wavefunction prefactor exponent (p−1)/2 is the unique choice that
//! cancels the u′ term: writing u = x^m R(x^p) gives a u′ coefficient
//! proportional to 2m + p − 1.

use crate::rational::Rational;
use crate::spectrum::{self, Branch, RadialProblem, SgaCoefficients, SpectrumError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("substitution exponent p = {0} must be positive")]
    NonPositiveP(Rational),
    #[error("inversion requires p = 1/2, got p = {0}")]
    WrongInversionP(Rational),
    #[error("inversion requires power-term exponents {{0, −1}}, got {0:?}")]
    WrongInversionExponents(Vec<String>),
    #[error("family members need a rational energy; got an irrational √(1−4C) case")]
    NonRationalEnergy,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Certificate that the generating problem satisfied the quantization
/// condition at level n on the given branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantizationCertificate {
    pub n: u32,
    pub branch: Branch,
}

/// Coefficients of one transformed equation
/// u″ + [inv_square/x² + Σ coeffᵢ·x^{expᵢ}]u = 0, with R = x^{wf_exponent}·u.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedProblem {
    pub p: Rational,
    #[serde(rename = "inv_square")]
    pub inv_square_coeff: Rational,
    #[serde(rename = "terms")]
    pub power_terms: Vec<(Rational, Rational)>,
    #[serde(rename = "wf_exponent")]
    pub wavefunction_exponent: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<QuantizationCertificate>,
}

/// Transform a general power equation u″ + Σ γⱼ x^{eⱼ} u = 0 under x → x^p,
/// u = x^{−(p−1)/2}·(new u): each term maps to p²γⱼ at exponent (eⱼ+2)p − 2,
/// plus the generated −(p²−1)/4 inverse-square term.
///
/// The family maps compose: applying p then p′ equals applying p·p′, which is
/// the group law the tests pin down.
pub fn transform_power_equation(
    terms: &[(Rational, Rational)],
    p: &Rational,
) -> Result<Vec<(Rational, Rational)>, FamilyError> {
    if !p.is_positive() {
        return Err(FamilyError::NonPositiveP(p.clone()));
    }
    let p2 = p * p;
    let two = Rational::from_int(2);
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(terms.len() + 1);
    // −(p²−1)/4 at exponent −2
    out.push((
        &(&Rational::one() - &p2) / &Rational::from_int(4),
        -&two,
    ));
    for (coeff, exp) in terms {
        out.push((&p2 * coeff, &(&(exp + &two) * p) - &two));
    }
    // merge equal exponents
    out.sort_by(|a, b| a.1.cmp(&b.1));
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(out.len());
    for (c, e) in out {
        match merged.last_mut() {
            Some((mc, me)) if *me == e => *mc = &*mc + &c,
            _ => merged.push((c, e)),
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    Ok(merged)
}

/// Map the oscillator-form coefficients (a, b, c) to the family member at
/// exponent p: inverse-square −(p²−1)/4 + p²a, power terms (p²b, 4p−2) and
/// (p²c, 2p−2), wavefunction exponent (p−1)/2.
pub fn transform_problem(
    co: &SgaCoefficients,
    p: &Rational,
) -> Result<GeneralizedProblem, FamilyError> {
    if !p.is_positive() {
        return Err(FamilyError::NonPositiveP(p.clone()));
    }
    let p2 = p * p;
    let four = Rational::from_int(4);
    let two = Rational::from_int(2);
    let inv_square = &(&(&Rational::one() - &p2) / &four) + &(&p2 * &co.a);
    let e_b = &(&four * p) - &two;
    let e_c = &(&two * p) - &two;
    let mut power_terms = Vec::new();
    let cb = &p2 * &co.b;
    let cc = &p2 * &co.c;
    if !cb.is_zero() {
        power_terms.push((cb, e_b));
    }
    if !cc.is_zero() {
        power_terms.push((cc, e_c));
    }
    Ok(GeneralizedProblem {
        p: p.clone(),
        inv_square_coeff: inv_square,
        power_terms,
        wavefunction_exponent: &(p - &Rational::one()) / &two,
        certificate: None,
    })
}

/// The p = 1/2 member reverses the original x = s² substitution; read back
/// (C, D, Ê). Exponents must be exactly {0, −1}.
pub fn invert_to_radial(gp: &GeneralizedProblem) -> Result<RadialProblem, FamilyError> {
    if gp.p != Rational::new(1, 2) {
        return Err(FamilyError::WrongInversionP(gp.p.clone()));
    }
    let mut e_hat = Rational::zero();
    let mut d = Rational::zero();
    for (c, e) in &gp.power_terms {
        if e.is_zero() {
            e_hat = c.clone();
        } else if *e == Rational::from_int(-1) {
            d = c.clone();
        } else {
            return Err(FamilyError::WrongInversionExponents(
                gp.power_terms.iter().map(|(_, e)| e.to_string()).collect(),
            ));
        }
    }
    // inv_square = 3/16 + a/4 and C = a/4 + 3/16 coincide
    Ok(RadialProblem::new(
        gp.inv_square_coeff.clone(),
        d,
        Some(e_hat),
    ))
}

/// Generate family members for each p, certified by the quantization condition
/// at (n, branch). Requires a rational energy (all worked cases are).
pub fn family_members(
    c: &Rational,
    d: &Rational,
    n: u32,
    branch: Branch,
    ps: &[Rational],
) -> Result<Vec<GeneralizedProblem>, FamilyError> {
    let level = spectrum::discrete_energy(c, d, n, branch)?;
    let e_hat = level
        .e_hat
        .as_rational()
        .ok_or(FamilyError::NonRationalEnergy)?
        .clone();
    let co = spectrum::abc_from_parts(c, d, &e_hat);
    let cert = QuantizationCertificate { n, branch };
    ps.iter()
        .map(|p| {
            let mut gp = transform_problem(&co, p)?;
            gp.certificate = Some(cert.clone());
            Ok(gp)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn co(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> SgaCoefficients {
        SgaCoefficients {
            a: r(a.0, a.1),
            b: r(b.0, b.1),
            c: r(c.0, c.1),
        }
    }

    #[test]
    fn p3_matches_printed_special_case() {
        // 9(a/y² + by¹⁰ + cy⁴) with inverse-square −2 + 9a and R = y·u
        let gp = transform_problem(&co((-3, 4), (-1, 1), (4, 1)), &r(3, 1)).unwrap();
        assert_eq!(gp.inv_square_coeff, &r(-2, 1) + &r(-27, 4));
        assert_eq!(
            gp.power_terms,
            vec![(r(-9, 1), r(10, 1)), (r(36, 1), r(4, 1))]
        );
        assert_eq!(gp.wavefunction_exponent, r(1, 1));
    }

    #[test]
    fn p1_is_identity() {
        let gp = transform_problem(&co((-3, 4), (-1, 1), (4, 1)), &r(1, 1)).unwrap();
        assert_eq!(gp.inv_square_coeff, r(-3, 4));
        assert_eq!(gp.power_terms, vec![(r(-1, 1), r(2, 1)), (r(4, 1), r(0, 1))]);
        assert_eq!(gp.wavefunction_exponent, r(0, 1));
    }

    #[test]
    fn p_two_thirds_derived_form() {
        // inv_square 5/36 + (4/9)a; terms ((4/9)b, 2/3), ((4/9)c, −2/3); exponent −1/6
        let gp = transform_problem(&co((-3, 4), (-1, 1), (4, 1)), &r(2, 3)).unwrap();
        assert_eq!(gp.inv_square_coeff, &r(5, 36) + &r(-1, 3));
        assert_eq!(
            gp.power_terms,
            vec![(r(-4, 9), r(2, 3)), (r(16, 9), r(-2, 3))]
        );
        assert_eq!(gp.wavefunction_exponent, r(-1, 6));
    }

    #[test]
    fn rejects_nonpositive_p() {
        assert!(matches!(
            transform_problem(&co((0, 1), (0, 1), (0, 1)), &r(0, 1)),
            Err(FamilyError::NonPositiveP(_))
        ));
        assert!(matches!(
            transform_problem(&co((0, 1), (0, 1), (0, 1)), &r(-2, 1)),
            Err(FamilyError::NonPositiveP(_))
        ));
    }

    #[test]
    fn inversion_round_trips() {
        for (a, b, c, expect) in [
            ((-3, 4), (-1, 1), (4, 1), (r(0, 1), r(1, 1), r(-1, 4))),
            ((0, 1), (0, 1), (0, 1), (r(3, 16), r(0, 1), r(0, 1))),
            ((-15, 4), (-1, 1), (2, 1), (r(-3, 4), r(1, 2), r(-1, 4))),
        ] {
            let gp = transform_problem(&co(a, b, c), &r(1, 2)).unwrap();
            let rp = invert_to_radial(&gp).unwrap();
            assert_eq!(rp.c, expect.0);
            assert_eq!(rp.d, expect.1);
            assert_eq!(rp.e_hat, Some(expect.2));
            // and forward again through to_abc
            let co2 = spectrum::to_abc(&rp).unwrap();
            assert_eq!((co2.a, co2.b, co2.c), (r(a.0, a.1), r(b.0, b.1), r(c.0, c.1)));
        }
    }

    #[test]
    fn inversion_rejects_wrong_p() {
        let gp = transform_problem(&co((0, 1), (-1, 1), (4, 1)), &r(3, 1)).unwrap();
        assert!(matches!(
            invert_to_radial(&gp),
            Err(FamilyError::WrongInversionP(_))
        ));
    }

    #[test]
    fn family_members_compose_pipeline() {
        // (C=0, D=1, n=0, plus): Ê = −1/4, (a,b,c) = (−3/4, −1, 4); p = 3 member
        let members = family_members(&r(0, 1), &r(1, 1), 0, Branch::Plus, &[r(3, 1)]).unwrap();
        assert_eq!(members.len(), 1);
        let gp = &members[0];
        assert_eq!(gp.inv_square_coeff, r(-35, 4));
        assert_eq!(gp.power_terms, vec![(r(-9, 1), r(10, 1)), (r(36, 1), r(4, 1))]);
        assert_eq!(
            gp.certificate,
            Some(QuantizationCertificate { n: 0, branch: Branch::Plus })
        );

        // p = 1 gives the (a,b,c) form itself
        let members = family_members(&r(0, 1), &r(1, 1), 0, Branch::Plus, &[r(1, 1)]).unwrap();
        assert_eq!(members[0].inv_square_coeff, r(-3, 4));

        // (C=−3/4, D=1, n=0, plus): Ê = −1/9; p = 1/2 member maps back
        let members = family_members(&r(-3, 4), &r(1, 1), 0, Branch::Plus, &[r(1, 2)]).unwrap();
        let rp = invert_to_radial(&members[0]).unwrap();
        assert_eq!(rp.c, r(-3, 4));
        assert_eq!(rp.d, r(1, 1));
        assert_eq!(rp.e_hat, Some(r(-1, 9)));
    }

    #[test]
    fn group_law_on_power_equations() {
        // base: the (a,b,c) equation as terms (a at −2, b at 2, c at 0)
        let base = vec![(r(-3, 4), r(-2, 1)), (r(-1, 1), r(2, 1)), (r(4, 1), r(0, 1))];
        for (p, q) in [((2, 1), (1, 2)), ((3, 1), (1, 3))] {
            let one_step = transform_power_equation(&base, &r(p.0 * q.0, p.1 * q.1)).unwrap();
            let two_step = transform_power_equation(
                &transform_power_equation(&base, &r(p.0, p.1)).unwrap(),
                &r(q.0, q.1),
            )
            .unwrap();
            assert_eq!(one_step, two_step);
        }
    }

    #[test]
    fn quantization_invariance_of_members() {
        // members keep b, c of the generating condition, so the residual stays zero
        let members =
            family_members(&r(0, 1), &r(1, 1), 0, Branch::Plus, &[r(3, 1), r(1, 2)]).unwrap();
        let co = spectrum::abc_from_parts(&r(0, 1), &r(1, 1), &r(-1, 4));
        for gp in &members {
            let cert = gp.certificate.as_ref().unwrap();
            let res = spectrum::quantization_residual(&co, cert.n, cert.branch).unwrap();
            assert!(res.is_zero());
        }
    }

    #[test]
    fn json_shape() {
        let gp = transform_problem(&co((-3, 4), (-1, 1), (4, 1)), &r(2, 3)).unwrap();
        let v = serde_json::to_value(&gp).unwrap();
        assert_eq!(v["p"], "2/3");
        assert_eq!(v["wf_exponent"], "-1/6");
        assert!(v["terms"].is_array());
        assert_eq!(v["inv_square"], "-7/36");
    }
}
