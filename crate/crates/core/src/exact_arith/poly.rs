use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ArithError;

use super::{GaussianRational, Rational};

/// Sparse Laurent polynomial in `x` where `x² = q`.
///
/// Keys count half-steps: the key `e` stands for `q^(e/2)`. Zero coefficients are
/// never stored, so two equal polynomials have equal maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HalfQPolynomial {
    terms: BTreeMap<i64, GaussianRational>,
}

/// A single term `coeff · q^(half_exp/2)` with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: GaussianRational,
    half_exp: i64,
}

impl Monomial {
    /// Returns `None` for a zero coefficient.
    pub fn new(coeff: GaussianRational, half_exp: i64) -> Option<Self> {
        (!coeff.is_zero()).then_some(Monomial { coeff, half_exp })
    }

    /// `c · q^e` with an integer power of `q`.
    pub fn q_power(coeff: impl Into<GaussianRational>, q_exp: i64) -> Option<Self> {
        Monomial::new(coeff.into(), 2 * q_exp)
    }

    pub fn coeff(&self) -> &GaussianRational {
        &self.coeff
    }

    pub fn half_exp(&self) -> i64 {
        self.half_exp
    }

    pub fn to_poly(&self) -> HalfQPolynomial {
        HalfQPolynomial::monomial(self.coeff.clone(), self.half_exp)
    }

    pub fn neg(&self) -> Monomial {
        Monomial { coeff: -&self.coeff, half_exp: self.half_exp }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { coeff: &self.coeff * &other.coeff, half_exp: self.half_exp + other.half_exp }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let coeff = self.coeff.pow(i64::from(k)).expect("non-negative power of a nonzero value");
        Monomial { coeff, half_exp: self.half_exp * i64::from(k) }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl HalfQPolynomial {
    pub fn zero() -> Self {
        HalfQPolynomial::default()
    }

    pub fn one() -> Self {
        HalfQPolynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        HalfQPolynomial::monomial(c, 0)
    }

    /// `c · q^(half_exp/2)`.
    pub fn monomial(c: GaussianRational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        HalfQPolynomial { terms }
    }

    /// `c · q^q_exp`.
    pub fn q_term(c: impl Into<GaussianRational>, q_exp: i64) -> Self {
        HalfQPolynomial::monomial(c.into(), 2 * q_exp)
    }

    /// Builds `Σ coeffs[s] q^s` from a dense ascending list of integer coefficients.
    pub fn from_q_coefficients(coeffs: &[i64]) -> Self {
        let mut p = HalfQPolynomial::zero();
        for (s, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * s as i64, GaussianRational::from_integer(c));
        }
        p
    }

    /// Adds `c · x^half_exp` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, half_exp: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&half_exp) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&half_exp);
                }
            }
            None => {
                self.terms.insert(half_exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Ascending `(half_exp, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Largest half-step exponent, `None` for the zero polynomial.
    pub fn half_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest half-step exponent, `None` for the zero polynomial.
    pub fn low_half_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Degree in `q` of a plain polynomial.
    pub fn q_degree(&self) -> Option<i64> {
        self.half_degree().map(|e| e.div_euclid(2))
    }

    /// Every exponent is an integer power of `q` and every coefficient is real.
    pub fn is_plain(&self) -> bool {
        self.terms.iter().all(|(e, c)| e % 2 == 0 && c.is_real())
    }

    /// Returns the polynomial back if it is plain, else a domain error.
    pub fn require_plain(&self) -> Result<&Self, ArithError> {
        if self.is_plain() {
            Ok(self)
        } else {
            Err(ArithError::NotPlain(Box::new(self.clone())))
        }
    }

    pub fn as_monomial(&self) -> Result<Monomial, ArithError> {
        match self.terms.len() {
            1 => {
                let (&e, c) = self.terms.iter().next().unwrap();
                Ok(Monomial { coeff: c.clone(), half_exp: e })
            }
            _ => Err(ArithError::NotMonomial(Box::new(self.clone()))),
        }
    }

    /// Coefficient of `q^s`, zero if absent.
    pub fn coefficient_at(&self, s: i64) -> GaussianRational {
        self.coefficient_at_half(2 * s)
    }

    /// Coefficient of `q^(e/2)`, zero if absent.
    pub fn coefficient_at_half(&self, e: i64) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Dense real coefficients of `q^0 ..= q^degree`. Requires a plain polynomial
    /// without negative powers.
    pub fn dense_q_coefficients(&self) -> Result<Vec<Rational>, ArithError> {
        self.require_plain()?;
        if self.low_half_exponent().is_some_and(|e| e < 0) {
            return Err(ArithError::NotPlain(Box::new(self.clone())));
        }
        let degree = match self.q_degree() {
            Some(d) => d,
            None => return Ok(Vec::new()),
        };
        Ok((0..=degree).map(|s| self.coefficient_at(s).re).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return HalfQPolynomial::zero();
        }
        HalfQPolynomial { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Multiplies by `x^half_shift`.
    pub fn shift(&self, half_shift: i64) -> Self {
        HalfQPolynomial { terms: self.terms.iter().map(|(&e, v)| (e + half_shift, v.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HalfQPolynomial { terms: self.terms.iter().map(|(&e, v)| (e + m.half_exp, v * &m.coeff)).collect() }
    }

    /// Substitutes `q → q²` by doubling every half-step exponent.
    pub fn substitute_q_squared(&self) -> Self {
        HalfQPolynomial { terms: self.terms.iter().map(|(&e, v)| (2 * e, v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(HalfQPolynomial::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`; fails unless the remainder is zero.
    ///
    /// Long division runs from the top exponent down and stops once the next
    /// quotient term would sit below the lowest exponent any exact quotient can have.
    pub fn divide_exact(&self, divisor: &HalfQPolynomial) -> Result<Self, ArithError> {
        let (d_lo, d_hi) = match (divisor.low_half_exponent(), divisor.half_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(ArithError::DivisionByZero),
        };
        let lead = &divisor.terms[&d_hi];
        let p_lo = match self.low_half_exponent() {
            Some(lo) => lo,
            None => return Ok(HalfQPolynomial::zero()),
        };
        let floor = p_lo - d_lo;
        let mut rem = self.clone();
        let mut quotient = HalfQPolynomial::zero();
        while let Some(r_hi) = rem.half_degree() {
            let shift = r_hi - d_hi;
            if shift < floor {
                break;
            }
            let c = rem.terms[&r_hi].checked_div(lead)?;
            for (&e, v) in &divisor.terms {
                rem.add_term(e + shift, -(v * &c));
            }
            quotient.add_term(shift, c);
        }
        if rem.is_zero() {
            Ok(quotient)
        } else {
            Err(ArithError::NotDivisible { remainder: Box::new(rem) })
        }
    }

    /// Value at `q = v`. Only plain polynomials are evaluated.
    pub fn eval(&self, v: &GaussianRational) -> Result<GaussianRational, ArithError> {
        self.require_plain()?;
        let mut acc = GaussianRational::zero();
        for (&e, c) in &self.terms {
            acc = &acc + &(c * &v.pow(e / 2)?);
        }
        Ok(acc)
    }
}

impl From<Monomial> for HalfQPolynomial {
    fn from(m: Monomial) -> Self {
        HalfQPolynomial::monomial(m.coeff, m.half_exp)
    }
}

impl Add<&HalfQPolynomial> for &HalfQPolynomial {
    type Output = HalfQPolynomial;
    fn add(self, rhs: &HalfQPolynomial) -> HalfQPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for HalfQPolynomial {
    type Output = HalfQPolynomial;
    fn add(mut self, rhs: HalfQPolynomial) -> HalfQPolynomial {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub<&HalfQPolynomial> for &HalfQPolynomial {
    type Output = HalfQPolynomial;
    fn sub(self, rhs: &HalfQPolynomial) -> HalfQPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&HalfQPolynomial> for &HalfQPolynomial {
    type Output = HalfQPolynomial;
    fn mul(self, rhs: &HalfQPolynomial) -> HalfQPolynomial {
        let mut out = HalfQPolynomial::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &HalfQPolynomial {
    type Output = HalfQPolynomial;
    fn neg(self) -> HalfQPolynomial {
        HalfQPolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

fn power_of_q(half_exp: i64) -> Option<String> {
    match half_exp {
        0 => None,
        2 => Some("q".to_string()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("q^({}/2)", e)),
    }
}

/// Pulls a leading minus sign out of real or purely imaginary coefficients.
fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    let negative = if c.im.is_zero() {
        c.re.is_negative()
    } else {
        c.re.is_zero() && c.im.is_negative()
    };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Renders ascending, e.g. `1 + q + 2*q^2 - q^(3/2)`.
impl fmt::Display for HalfQPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = split_sign(c);
            let body = match (power_of_q(e), mag == GaussianRational::one()) {
                (None, _) => mag.to_string(),
                (Some(p), true) => p,
                (Some(p), false) => format!("{}*{}", mag, p),
            };
            match (idx, negative) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}
