//! Exact-arithmetic analysis of the Schrödinger problem u″ + (C/x² + D/x + Ê)u = 0.
//!
//! The crate has two independent halves. The symbolic half works over a closed
//! function ring (finite sums q·x^r·e^{P(x)} with Gaussian-rational q, rational r,
//! and polynomial exponent P) and builds on it: differential operators and the
//! su(1,1) generator realizations, the discrete/continuous spectrum pipeline,
//! the isospectral change-of-variables family, a Lie point-symmetry engine with
//! an exact Laurent-ansatz solver, and the extended X/Y/Z vector-field algebra.
//! The numeric half is a deterministic finite-difference eigenvalue oracle
//! (Sturm-sequence bisection on symmetric tridiagonal matrices) used to
//! cross-check the closed forms in floating point.
//!
//! Everything symbolic is exact: no rounding occurs outside [`oracle`].

pub mod algebraic;
pub mod diffop;
pub mod exppoly;
pub mod family;
pub mod liealg;
pub mod linalg;
pub mod oracle;
pub mod ratpoly;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod symmetry;
pub mod verify;

pub use algebraic::QuadExt;
pub use diffop::{DiffOp, Realization};
pub use exppoly::{ExpArg, ExpPoly, ExpTerm};
pub use rational::{GaussRational, Rational};
pub use spectrum::{Branch, EnergyLevel, EnergyValue, RadialProblem, SgaCoefficients};
