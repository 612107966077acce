//! Exact rational, Gaussian-rational and half-power Laurent polynomial arithmetic.

mod gaussian;
mod poly;
mod rational;

pub use gaussian::GaussianRational;
pub use poly::{HalfQPolynomial, Monomial};
pub use rational::{rat_arith, RatOp, Rational};

use crate::error::ArithError;

pub fn poly_mul(p: &HalfQPolynomial, r: &HalfQPolynomial) -> HalfQPolynomial {
    p * r
}

pub fn poly_divide_exact(p: &HalfQPolynomial, d: &HalfQPolynomial) -> Result<HalfQPolynomial, ArithError> {
    p.divide_exact(d)
}

pub fn poly_eval(p: &HalfQPolynomial, v: &GaussianRational) -> Result<GaussianRational, ArithError> {
    p.eval(v)
}

/// Coefficient of `q^s` (integer power).
pub fn coefficient_at(p: &HalfQPolynomial, s: i64) -> GaussianRational {
    p.coefficient_at(s)
}
