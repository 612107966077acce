use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ArithError;

use super::Rational;

/// `re + im·i` with exact rational parts.
///
/// Square roots of `-1` that show up in sign factors such as `(-1)^(m/2)` are
/// taken on the principal branch, `(-1)^(1/2) = i`, so they become `i^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::real(Rational::from(n))
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    /// `i^k` for any integer `k`, reduced mod 4.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussianRational::from_integer(1),
            1 => GaussianRational::i(),
            2 => GaussianRational::from_integer(-1),
            _ => -GaussianRational::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational { re: &self.re * k, im: &self.im * k }
    }

    pub fn checked_div(&self, rhs: &GaussianRational) -> Result<Self, ArithError> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(GaussianRational { re: num.re.checked_div(&n)?, im: num.im.checked_div(&n)? })
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let mut base = if exp < 0 { GaussianRational::one().checked_div(self)? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) if (-&self.im).is_one() => write!(f, "-i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "({}{}i)", self.re, sign)
                } else {
                    write!(f, "({}{}{}i)", self.re, sign, mag)
                }
            }
        }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}
