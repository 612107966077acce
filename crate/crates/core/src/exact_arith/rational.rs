use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// Exact fraction with a positive denominator, always stored in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// The four field operations accepted by [`rat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`; division by zero is reported instead of panicking.
pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational, ArithError> {
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Sub => Ok(a - b),
        RatOp::Mul => Ok(a * b),
        RatOp::Div => a.checked_div(b),
    }
}

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one().checked_div(self)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<Rational, ArithError> {
        if exp < 0 && self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Re-reduces the stored fraction. The representation is already canonical,
    /// so this is the identity on every reachable value.
    pub fn normalized(&self) -> Rational {
        Rational(BigRational::new(self.0.numer().clone(), self.0.denom().clone()))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn addition_reduces() {
        assert_eq!(rat_arith(&r(1, 2), &r(1, 3), RatOp::Add).unwrap(), r(5, 6));
    }

    #[test]
    fn product_matches_integer_cross_check() {
        let p = rat_arith(&r(7, 16), &r(31, 32), RatOp::Mul).unwrap();
        assert_eq!(p, r(217, 512));
        // independent integer route
        assert_eq!(7 * 31, 217);
        assert_eq!(16 * 32, 512);
        assert_eq!(p.numerator(), &BigInt::from(217));
        assert_eq!(p.denominator(), &BigInt::from(512));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rat_arith(&r(1, 3), &Rational::zero(), RatOp::Div),
            Err(ArithError::DivisionByZero)
        );
        assert!(Rational::new(1, 0).is_err());
        assert!(Rational::zero().pow(-1).is_err());
    }

    #[test]
    fn denominator_is_positive_and_reduced() {
        let x = r(6, -4);
        assert_eq!(x.numerator(), &BigInt::from(-3));
        assert_eq!(x.denominator(), &BigInt::from(2));
        assert_eq!(x.floor(), BigInt::from(-2));
        assert_eq!(x.ceil(), BigInt::from(-1));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-3/6".parse::<Rational>().unwrap(), r(-1, 2));
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert_eq!(r(-1, 2).to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(r(-1, 2).pow(3).unwrap(), r(-1, 8));
        assert_eq!(r(2, 3).pow(-2).unwrap(), r(9, 4));
    }
}
