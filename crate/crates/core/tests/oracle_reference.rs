//! Cross-checks of the Sturm-bisection eigensolver against an independent
//! reference (leading-principal-minor recurrence of the characteristic
//! polynomial, with rescaling), plus the grid-refinement-order and
//! determinism guarantees.

use kratzer_core::oracle::{
    discretize, lowest_eigenvalues, solve_radial_with, sturm_count, Grid, OracleOptions,
    TriMatrix,
};
use kratzer_core::rational::Rational;

/// Sign-agreement count in the characteristic-polynomial minor sequence:
/// p₀ = 1, p₁ = d₀ − λ, pᵢ = (dᵢ₋₁ − λ)pᵢ₋₁ − eᵢ₋₂²·pᵢ₋₂. The number of
/// eigenvalues below λ equals the number of sign changes. Implemented with
/// magnitude rescaling; fully independent of the LDLᵀ pivot recurrence the
/// production solver uses.
fn minor_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let mut changes = 0;
    let mut p_prev = 1.0f64;
    let mut p = diag[0] - lambda;
    if p < 0.0 {
        changes += 1;
    } else if p == 0.0 {
        p = 1e-300; // zero minors count as positive, matching the pivot guard
    }
    for i in 1..n {
        let mut next = (diag[i] - lambda) * p - off[i - 1] * off[i - 1] * p_prev;
        // rescale to avoid overflow/underflow of the raw minors
        let scale = p.abs().max(next.abs());
        if scale > 1e150 {
            p /= 1e150;
            next /= 1e150;
        } else if scale < 1e-150 && scale > 0.0 {
            p /= 1e-150;
            next /= 1e-150;
        }
        if next < 0.0 && p >= 0.0 || next >= 0.0 && p < 0.0 {
            changes += 1;
        }
        if next == 0.0 {
            next = 1e-300;
        }
        p_prev = p;
        p = next;
    }
    changes
}

fn reference_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let l = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let r = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - l - r);
        hi = hi.max(diag[i] + l + r);
    }
    lo -= 1.0;
    hi += 1.0;
    (0..k)
        .map(|idx| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if b - a < 1e-12 {
                    break;
                }
                if minor_count(diag, off, mid) <= idx {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Deterministic pseudo-random stream (xorshift), independent of rand crates.
struct Stream(u64);

impl Stream {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn sturm_bisection_matches_minor_reference() {
    let mut rng = Stream(0x1234_5678_9abc_def0);
    for trial in 0..12 {
        let m = 5 + (trial * 4) % 46; // up to 49
        let diag: Vec<f64> = (0..m).map(|_| 8.0 * rng.next_f64() - 4.0).collect();
        let off: Vec<f64> = (0..m - 1).map(|_| 4.0 * rng.next_f64() - 2.0).collect();
        let t = TriMatrix {
            diag: diag.clone(),
            off: off.clone(),
        };
        let k = (m / 2).max(1);
        let got = lowest_eigenvalues(&t, k, 1e-13).unwrap();
        let expect = reference_eigenvalues(&diag, &off, k);
        for (g, e) in got.iter().zip(&expect) {
            assert!(
                (g - e).abs() < 1e-10,
                "trial {trial}, m={m}: {g} vs reference {e}"
            );
        }
    }
}

#[test]
fn inertia_counts_agree_between_methods() {
    let mut rng = Stream(0xfeed_beef_cafe_0001);
    for _ in 0..20 {
        let m = 3 + (rng.next_f64() * 40.0) as usize;
        let diag: Vec<f64> = (0..m).map(|_| 6.0 * rng.next_f64() - 3.0).collect();
        let off: Vec<f64> = (0..m - 1).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        let t = TriMatrix {
            diag: diag.clone(),
            off: off.clone(),
        };
        for probe in [-5.0, -1.0, -0.1, 0.0, 0.3, 2.0, 5.5] {
            assert_eq!(
                sturm_count(&t, probe),
                minor_count(&diag, &off, probe),
                "m={m}, probe={probe}"
            );
        }
    }
}

#[test]
fn refinement_order_is_second_order() {
    // the C = 0, D = 1 ground state: halving h cuts the error ≈ 4×
    let report = solve_radial_with(
        &Rational::zero(),
        &Rational::one(),
        1,
        OracleOptions::default(),
    )
    .unwrap();
    let ratio = report.levels[0].refinement_ratio;
    assert!(
        (3.0..=5.0).contains(&ratio),
        "refinement ratio {ratio} outside [3, 5]"
    );
}

#[test]
fn oracle_is_bit_deterministic() {
    let grid = Grid::new(1e-6, 320.0, 5000).unwrap();
    let v = |x: f64| 0.75 / (x * x) - 1.0 / x;
    let t1 = discretize(v, &grid).unwrap();
    let t2 = discretize(v, &grid).unwrap();
    let a = lowest_eigenvalues(&t1, 3, 1e-12).unwrap();
    let b = lowest_eigenvalues(&t2, 3, 1e-12).unwrap();
    assert_eq!(a, b);
    let bits_a: Vec<u64> = a.iter().map(|x| x.to_bits()).collect();
    let bits_b: Vec<u64> = b.iter().map(|x| x.to_bits()).collect();
    assert_eq!(bits_a, bits_b);
}
