//! Gaussian binomials, q-Pochhammer products and the double-sum form of
//! `∏_{n=1}^{j} (1 + q^{2n-1})`.
//!
//! The double sum carries factors `(-1)^{3n/2}`, `(-1)^{m/2}` and half-integer
//! powers of `q`. They are kept exact as powers of `i` and of `x = q^{1/2}`;
//! the claim that all of it collapses to an ordinary polynomial divisible by
//! `q + 1` is checked, never assumed.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ArithError, Error, Result};
use crate::exact_arith::{GaussianRational, HalfQPolynomial, Monomial};

fn one_minus(m: &Monomial) -> HalfQPolynomial {
    &HalfQPolynomial::one() - &m.to_poly()
}

fn one_minus_q_power(e: i64) -> HalfQPolynomial {
    &HalfQPolynomial::one() - &HalfQPolynomial::q_term(1, e)
}

/// `[m n]_q = (q;q)_m / ((q;q)_n (q;q)_{m-n})`, zero when `n > m`.
///
/// Computed as `∏_{i=1}^{n} (1 - q^{m-n+i}) / ∏_{i=1}^{n} (1 - q^i)` with an exact
/// polynomial division.
pub fn gaussian_binomial(m: u64, n: u64) -> HalfQPolynomial {
    if n > m {
        return HalfQPolynomial::zero();
    }
    let n = n.min(m - n) as i64;
    let m = m as i64;
    let mut num = HalfQPolynomial::one();
    let mut den = HalfQPolynomial::one();
    for i in 1..=n {
        num = &num * &one_minus_q_power(m - n + i);
        den = &den * &one_minus_q_power(i);
    }
    num.divide_exact(&den).expect("Gaussian binomials are polynomials")
}

/// `(a;q)_n = ∏_{k=0}^{n-1} (1 - a q^k)`.
pub fn q_pochhammer(a: &Monomial, n: u64) -> HalfQPolynomial {
    (0..n as i64).fold(HalfQPolynomial::one(), |acc, k| {
        let factor = Monomial::new(a.coeff().clone(), a.half_exp() + 2 * k).expect("nonzero coefficient");
        &acc * &one_minus(&factor)
    })
}

/// `Σ_{k=0}^{n} (-a)^k q^{k(k-1)/2} [n k]_q`.
pub fn q_binomial_expansion(a: &Monomial, n: u64) -> HalfQPolynomial {
    let neg_a = a.neg();
    let mut sum = HalfQPolynomial::zero();
    for k in 0..=n {
        let coeff_power = neg_a.pow(k as u32);
        let shift = Monomial::new(coeff_power.coeff().clone(), coeff_power.half_exp() + (k * k.saturating_sub(1)) as i64)
            .expect("nonzero coefficient");
        sum = sum + gaussian_binomial(n, k).mul_monomial(&shift);
    }
    sum
}

/// `(a;q)_n` equals its `q`-binomial expansion.
pub fn q_binomial_theorem_check(a: &Monomial, n: u64) -> bool {
    q_pochhammer(a, n) == q_binomial_expansion(a, n)
}

/// `(a²;q²)_n = (a;q)_n (-a;q)_n`.
///
/// The left side is `(b;q)_n` with `q → q²` substituted, where `b` has the
/// coefficient of `a²` and half of its exponent.
pub fn square_identity_check(a: &Monomial, n: u64) -> bool {
    let a_sq = a.pow(2);
    let b = Monomial::new(a_sq.coeff().clone(), a_sq.half_exp() / 2).expect("nonzero coefficient");
    let lhs = q_pochhammer(&b, n).substitute_q_squared();
    let rhs = &q_pochhammer(a, n) * &q_pochhammer(&a.neg(), n);
    lhs == rhs
}

/// `Σ_{m=0}^{j+1} Σ_{n=0}^{j+1} i^{3n} q^{(n²-2n+2)/2} i^m q^{(m²-2m)/2} [j+1 n]_q [j+1 m]_q`,
/// i.e. `(q + 1)·F(q)`.
///
/// The result must be plain; anything else is reported as an identity violation.
pub fn double_sum_numerator(j: u64) -> Result<HalfQPolynomial> {
    if j == 0 {
        return Err(Error::Precondition("j must be at least 1".into()));
    }
    let top = j + 1;
    let binomials: Vec<HalfQPolynomial> = (0..=top).map(|k| gaussian_binomial(top, k)).collect();
    let outer: Vec<HalfQPolynomial> = (0..=top as i64)
        .map(|n| binomials[n as usize].scale(&GaussianRational::i_pow(3 * n)).shift(n * n - 2 * n + 2))
        .collect();
    let inner: Vec<HalfQPolynomial> = (0..=top as i64)
        .map(|m| binomials[m as usize].scale(&GaussianRational::i_pow(m)).shift(m * m - 2 * m))
        .collect();
    let total = outer
        .par_iter()
        .map(|a_n| inner.iter().fold(HalfQPolynomial::zero(), |acc, b_m| acc + a_n * b_m))
        .reduce(HalfQPolynomial::zero, |x, y| x + y);
    if !total.is_plain() {
        return Err(Error::IdentityViolation(format!("double sum for j = {j} is not a polynomial in q: {total}")));
    }
    Ok(total)
}

/// `F(q)`: the double sum divided exactly by `q + 1`.
#[allow(non_snake_case)]
pub fn F_polynomial(j: u64) -> Result<HalfQPolynomial> {
    let numerator = double_sum_numerator(j)?;
    let divisor = HalfQPolynomial::from_q_coefficients(&[1, 1]);
    numerator.divide_exact(&divisor).map_err(|e| match e {
        ArithError::NotDivisible { remainder } => {
            Error::IdentityViolation(format!("double sum for j = {j} is not divisible by 1 + q; remainder {remainder}"))
        }
        other => Error::Arith(other),
    })
}

/// `∏_{n=1}^{j} (1 + q^{2n-1})`.
pub fn odd_product(j: u64) -> HalfQPolynomial {
    (1..=j as i64).fold(HalfQPolynomial::one(), |acc, n| {
        &acc * &(&HalfQPolynomial::one() + &HalfQPolynomial::q_term(1, 2 * n - 1))
    })
}

/// Outcome of checking `F(q) = ∏(1 + q^{2n-1})` at one `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSumVerification {
    pub j: u64,
    pub numerator_plain: bool,
    pub divisible: bool,
    pub equals_odd_product: bool,
    /// `F(q)` rendered ascending.
    pub f: String,
}

impl DoubleSumVerification {
    pub fn holds(&self) -> bool {
        self.numerator_plain && self.divisible && self.equals_odd_product
    }
}

/// Errors only on a bad `j`; a failed identity is reported in the fields.
pub fn verify_double_sum(j: u64) -> Result<DoubleSumVerification> {
    let outcome = match F_polynomial(j) {
        Ok(f) => {
            let equal = f == odd_product(j);
            (true, true, equal, f.to_string())
        }
        Err(Error::IdentityViolation(msg)) if msg.contains("not a polynomial") => (false, false, false, msg),
        Err(Error::IdentityViolation(msg)) => (true, false, false, msg),
        Err(other) => return Err(other),
    };
    let (numerator_plain, divisible, equals_odd_product, f) = outcome;
    Ok(DoubleSumVerification { j, numerator_plain, divisible, equals_odd_product, f })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Unimodal,
    Bimodal,
    Other,
}

/// Coefficients of `F(q)` at exponents `k·j`, `k = 1 … j-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalityReport {
    pub j: u64,
    #[serde(with = "biguint_list")]
    pub coefficients: Vec<BigUint>,
    pub peak_runs: usize,
    pub classification: Modality,
}

/// Counts peak runs: equal neighbours are merged into runs, and a run is a peak
/// when it is strictly above each neighbouring run (ends only need one side).
pub fn peak_runs<T: Ord>(values: &[T]) -> usize {
    let mut runs: Vec<&T> = Vec::new();
    for v in values {
        if runs.last() != Some(&v) {
            runs.push(v);
        }
    }
    (0..runs.len())
        .filter(|&i| {
            let left = i == 0 || runs[i] > runs[i - 1];
            let right = i + 1 == runs.len() || runs[i] > runs[i + 1];
            left && right
        })
        .count()
}

pub fn classify_modality(peaks: usize) -> Modality {
    match peaks {
        1 => Modality::Unimodal,
        2 => Modality::Bimodal,
        _ => Modality::Other,
    }
}

pub fn modality(j: u64) -> Result<ModalityReport> {
    if j < 3 {
        return Err(Error::Precondition(format!("modality needs j >= 3, got {j}")));
    }
    let f = odd_product(j);
    let coefficients = (1..j)
        .map(|k| {
            let c = f.coefficient_at((k * j) as i64).re;
            debug_assert!(c.is_integer() && !c.is_negative());
            c.numerator().magnitude().clone()
        })
        .collect::<Vec<BigUint>>();
    let peaks = peak_runs(&coefficients);
    Ok(ModalityReport { j, coefficients, peak_runs: peaks, classification: classify_modality(peaks) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalityScan {
    pub j_min: u64,
    pub j_max: u64,
    pub reports: Vec<ModalityReport>,
    /// `j` values whose coefficients are neither unimodal nor bimodal.
    pub violations: Vec<u64>,
}

pub fn modality_scan(j_min: u64, j_max: u64) -> Result<ModalityScan> {
    if j_min < 3 || j_max < j_min {
        return Err(Error::Precondition(format!("need 3 <= j_min <= j_max, got {j_min}..{j_max}")));
    }
    let reports = (j_min..=j_max).into_par_iter().map(modality).collect::<Result<Vec<_>>>()?;
    let violations = reports.iter().filter(|r| r.classification == Modality::Other).map(|r| r.j).collect();
    Ok(ModalityScan { j_min, j_max, reports, violations })
}

/// Big integers as JSON numbers when they fit in `u64`, otherwise as decimal strings.
pub(crate) mod biguint_list {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Large(String),
    }

    pub fn serialize<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = values
            .iter()
            .map(|v| match v.to_u64() {
                Some(x) => Repr::Small(x),
                None => Repr::Large(v.to_string()),
            })
            .collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigUint::from(x)),
                Repr::Large(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}
