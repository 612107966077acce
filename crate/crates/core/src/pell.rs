//! The Pell constant `1 - ∏_{k≥0} (1 - 2^{-(2k+1)})`, kept in exact rationals
//! until the final decimal rendering.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{GaussianRational, Rational};
use crate::qseries;

/// Partial product over the first `factors` terms and a bound on what the
/// remaining factors can remove from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellApproximation {
    pub factors: u64,
    /// `∏_{k=0}^{factors-1} (1 - 2^{-(2k+1)})`.
    pub value: Rational,
    /// `Σ_{k≥factors} 2^{-(2k+1)} = (2/3)·4^{-factors}`.
    pub error_bound: Rational,
}

impl PellApproximation {
    /// Open interval containing the constant: `(1 - value, 1 - value + error_bound)`.
    pub fn interval(&self) -> (Rational, Rational) {
        let lo = Rational::one() - &self.value;
        let hi = &lo + &self.error_bound;
        (lo, hi)
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

pub fn pell_partial(factors: u64) -> Result<PellApproximation> {
    if factors == 0 {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..factors {
        let d = pow2(2 * k + 1);
        num *= &d - 1;
        den *= d;
    }
    let value = Rational::new(num, den)?;
    let error_bound = Rational::new(2, BigInt::from(3) * pow2(2 * factors))?;
    Ok(PellApproximation { factors, value, error_bound })
}

/// Smallest `K` with `4^K ≥ 10^D`, i.e. `⌈D·log₂10 / 2⌉`, computed without floats.
fn factors_for_digits(digits: u32) -> u64 {
    let target = BigInt::from(10).pow(digits);
    let mut k = 0u64;
    while pow2(2 * k) < target {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellDigits {
    pub requested_digits: u32,
    /// Fewer than requested only if the error interval straddles a digit boundary.
    pub emitted_digits: u32,
    pub value: String,
    pub factors: u64,
    /// Exact tail bound, `n/d`.
    pub error_bound: String,
}

/// Decimal digits of the constant after the point, truncated, that every value
/// in the certified interval agrees on.
pub fn pell_digits(digits: u32) -> Result<PellDigits> {
    if digits == 0 {
        return Err(Error::Precondition("need at least one digit".into()));
    }
    let factors = factors_for_digits(digits) + 2;
    let approx = pell_partial(factors)?;
    let (lo, hi) = approx.interval();
    let mut d = digits;
    let rendered = loop {
        let scale = Rational::from_integer(BigInt::from(10).pow(d));
        let low_digits = (&lo * &scale).floor();
        // the constant is strictly below `hi`
        let high_digits = (&hi * &scale).ceil() - 1;
        if low_digits == high_digits || d == 0 {
            break render_scaled(&low_digits, d);
        }
        d -= 1;
    };
    Ok(PellDigits {
        requested_digits: digits,
        emitted_digits: d,
        value: rendered,
        factors,
        error_bound: approx.error_bound.to_string(),
    })
}

fn render_scaled(scaled: &BigInt, d: u32) -> String {
    let scale = BigInt::from(10).pow(d);
    let int_part = scaled / &scale;
    if d == 0 {
        return int_part.to_string();
    }
    let frac = scaled % &scale;
    format!("{}.{:0>width$}", int_part, frac.to_string(), width = d as usize)
}

/// `1 - F(-1/2)` with `F` built from the double sum.
pub fn pell_via_f(j: u64) -> Result<Rational> {
    let f = qseries::F_polynomial(j)?;
    let v = f.eval(&GaussianRational::real(Rational::new(-1, 2)?))?;
    if !v.im.is_zero() {
        return Err(Error::IdentityViolation(format!("F(-1/2) is not real for j = {j}")));
    }
    Ok(Rational::one() - v.re)
}

/// Same partial product as [`pell_partial`] via the odd product alone; cheap for large `j`.
pub fn pell_via_odd_product(j: u64) -> Result<Rational> {
    let v = qseries::odd_product(j).eval(&GaussianRational::real(Rational::new(-1, 2)?))?;
    debug_assert!(v.im.is_zero());
    Ok(Rational::one() - v.re)
}

/// Number of leading decimal digits after the point on which two values agree.
pub fn agreeing_digits(x: &Rational, y: &Rational, max: u32) -> u32 {
    let mut scale = Rational::one();
    let ten = Rational::from(10);
    for d in 0..=max {
        if (x * &scale).floor() != (y * &scale).floor() {
            return d.saturating_sub(1);
        }
        scale = &scale * &ten;
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn partial_products() {
        assert_eq!(pell_partial(1).unwrap().value, r(1, 2));
        assert_eq!(pell_partial(2).unwrap().value, r(7, 16));
        assert_eq!(pell_partial(3).unwrap().value, r(217, 512));
        assert!(pell_partial(0).is_err());
    }

    #[test]
    fn digits() {
        assert_eq!(pell_digits(5).unwrap().value, "0.58057");
        assert_eq!(pell_digits(1).unwrap().value, "0.5");
        assert!(pell_digits(0).is_err());
    }

    #[test]
    fn factor_choice_matches_logarithm() {
        for d in 1..60u32 {
            let expected = (f64::from(d) * 10f64.log2() / 2.0).ceil() as u64;
            assert_eq!(factors_for_digits(d), expected, "D = {d}");
        }
    }

    #[test]
    fn via_f_small() {
        assert_eq!(pell_via_f(1).unwrap(), r(1, 2));
        assert_eq!(pell_via_f(3).unwrap(), r(295, 512));
        assert_eq!(pell_via_odd_product(3).unwrap(), r(295, 512));
    }

    #[test]
    fn digit_agreement() {
        assert_eq!(agreeing_digits(&r(12345, 100000), &r(12349, 100000), 10), 4);
        assert_eq!(agreeing_digits(&r(1, 3), &r(1, 3), 10), 10);
    }
}
