//! Symbolic certification of the change of variables behind the isospectral
//! family: substituting u = x^{−(p−1)/2}·R(x^p) into the transformed equation
//! reproduces p²·x^{…}·[R″ + f·R] with no R′ term, exactly, in the function
//! ring extended by formal jet symbols R, R′, R″ evaluated at x^p.

use kratzer_core::exppoly::ExpPoly;
use kratzer_core::family::{transform_problem, GeneralizedProblem};
use kratzer_core::rational::Rational;
use kratzer_core::spectrum::SgaCoefficients;

/// Σ_k c_k(x)·R^{(k)}(x^p): coefficients indexed by jet order. The only
/// operation the test needs is d/dx, which acts by the chain rule
/// (c·R_k)′ = c′·R_k + c·p·x^{p−1}·R_{k+1}.
#[derive(Clone)]
struct Jet {
    p: Rational,
    coeffs: Vec<ExpPoly>,
}

impl Jet {
    fn new(p: Rational, coeffs: Vec<ExpPoly>) -> Self {
        Jet { p, coeffs }
    }

    fn coeff(&self, k: usize) -> ExpPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(ExpPoly::zero)
    }

    fn derive(&self) -> Jet {
        let chain = ExpPoly::monomial(self.p.clone(), &self.p - &Rational::one());
        let mut out = vec![ExpPoly::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = &out[k] + &c.derive();
            out[k + 1] = &out[k + 1] + &(&chain * c);
        }
        Jet::new(self.p.clone(), out)
    }

    fn mul_fn(&self, f: &ExpPoly) -> Jet {
        Jet::new(
            self.p.clone(),
            self.coeffs.iter().map(|c| f * c).collect(),
        )
    }

    fn add(&self, other: &Jet) -> Jet {
        let n = self.coeffs.len().max(other.coeffs.len());
        Jet::new(
            self.p.clone(),
            (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect(),
        )
    }
}

fn potential_of(gp: &GeneralizedProblem) -> ExpPoly {
    let mut w = ExpPoly::monomial(gp.inv_square_coeff.clone(), Rational::from_int(-2));
    for (c, e) in &gp.power_terms {
        w = &w + &ExpPoly::monomial(c.clone(), e.clone());
    }
    w
}

fn check_elimination(a: &Rational, b: &Rational, c: &Rational, p: &Rational) {
    let co = SgaCoefficients {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    let gp = transform_problem(&co, p).unwrap();
    let m = -&gp.wavefunction_exponent; // u = x^m·R(x^p) with m = −(p−1)/2

    // u as a jet: x^m·R₀
    let u = Jet::new(p.clone(), vec![ExpPoly::xpow(m.clone())]);
    let u2 = u.derive().derive();
    let w = potential_of(&gp);
    let total = u2.add(&u.mul_fn(&w)); // u″ + W·u

    // expected: p²·x^{m+2p−2}·(R₂ + f(x^p)·R₀), f(s) = a/s² + b s² + c
    let p2 = p * p;
    let front = ExpPoly::monomial(
        p2.clone(),
        &(&m + &(&Rational::from_int(2) * p)) - &Rational::from_int(2),
    );
    let f_at_xp = &(&ExpPoly::monomial(a.clone(), &Rational::from_int(-2) * p)
        + &ExpPoly::monomial(b.clone(), &Rational::from_int(2) * p))
        + &ExpPoly::from_rational(c.clone());

    // R′ must cancel identically; R″ and R₀ must carry exactly the factors above
    assert!(
        total.coeff(1).is_zero(),
        "p = {p}: first-derivative term survived: {}",
        total.coeff(1)
    );
    assert_eq!(total.coeff(2), front, "p = {p}: R″ factor");
    assert_eq!(total.coeff(0), &front * &f_at_xp, "p = {p}: R factor");
    assert!(total.coeff(3).is_zero());
}

#[test]
fn first_derivative_elimination_across_p_set() {
    let r = |p: i64, q: i64| Rational::new(p, q);
    let ps = [r(3, 1), r(2, 1), r(1, 1), r(1, 2), r(2, 3), r(1, 3)];
    let triples = [
        (r(-3, 4), r(-1, 1), r(4, 1)),
        (r(2, 5), r(1, 3), r(-7, 2)),
        (r(0, 1), r(1, 1), r(0, 1)),
    ];
    for p in &ps {
        for (a, b, c) in &triples {
            check_elimination(a, b, c, p);
        }
    }
}

#[test]
fn wavefunction_exponent_is_the_unique_canceller() {
    // shifting the prefactor exponent by any nonzero amount re-introduces R′
    let r = |p: i64, q: i64| Rational::new(p, q);
    let p = r(3, 1);
    let co = SgaCoefficients { a: r(-3, 4), b: r(-1, 1), c: r(4, 1) };
    let gp = transform_problem(&co, &p).unwrap();
    for shift in [r(1, 2), r(-1, 3)] {
        let m = &-&gp.wavefunction_exponent + &shift;
        let u = Jet::new(p.clone(), vec![ExpPoly::xpow(m)]);
        let total = u.derive().derive().add(&u.mul_fn(&potential_of(&gp)));
        assert!(
            !total.coeff(1).is_zero(),
            "shift {shift} unexpectedly cancels R′"
        );
    }
}
