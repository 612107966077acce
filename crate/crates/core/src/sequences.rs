//! Arithmetic numerator sequences and the hypercube-cut sequences `C_M^N`.
//!
//! `C_M^N` is the largest number of pieces an `M`-dimensional cube can be cut
//! into with `N - 1` hyperplanes, so `N = 1` is the uncut cube. `M = 2` gives the
//! lazy caterer's sequence and `M = 3` the cake numbers.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::NumeratorSet;

/// Anything that can hand out its first `j` terms as a numerator set.
pub trait SequenceSource: Sync {
    fn prefix(&self, j: usize) -> Result<NumeratorSet>;
    fn describe(&self) -> String;
}

/// `a, a + b, a + 2b, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArithmeticSpec {
    pub a: u64,
    pub b: u64,
}

impl ArithmeticSpec {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("first term a must be at least 1".into()));
        }
        Ok(ArithmeticSpec { a, b })
    }

    /// 1-based term `a + (i - 1)·b`.
    pub fn term(&self, i: u64) -> u64 {
        self.a + (i - 1) * self.b
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.b > 0
    }
}

impl SequenceSource for ArithmeticSpec {
    fn prefix(&self, j: usize) -> Result<NumeratorSet> {
        arithmetic_prefix(*self, j)
    }

    fn describe(&self) -> String {
        format!("arithmetic a={} b={}", self.a, self.b)
    }
}

pub fn arithmetic_prefix(spec: ArithmeticSpec, j: usize) -> Result<NumeratorSet> {
    NumeratorSet::new((1..=j as u64).map(|i| spec.term(i)).collect())
}

/// The sequence `C_M^1, C_M^2, …` for a fixed dimension `M ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypercubeCutSpec {
    pub dimension: u32,
}

impl HypercubeCutSpec {
    pub fn new(dimension: u32) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension M must be at least 1".into()));
        }
        Ok(HypercubeCutSpec { dimension })
    }
}

impl SequenceSource for HypercubeCutSpec {
    fn prefix(&self, j: usize) -> Result<NumeratorSet> {
        check_dimension(self.dimension)?;
        let values = cut_sequence(self.dimension, j)
            .into_iter()
            .map(|v| v.to_u64().ok_or_else(|| Error::Overflow(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        NumeratorSet::new(values)
    }

    fn describe(&self) -> String {
        format!("cut M={}", self.dimension)
    }
}

fn check_dimension(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("dimension M must be at least 1".into()));
    }
    Ok(())
}

/// `C_M^1 ..= C_M^count` from the recurrence `C_M^N = C_M^{N-1} + C_{M-1}^{N-1}`,
/// `C_M^1 = 1`, seeded with the row `C_1^N = N`.
pub fn cut_sequence(m: u32, count: usize) -> Vec<BigUint> {
    assert!(m >= 1, "dimension must be positive");
    let mut row: Vec<BigUint> = (1..=count as u64).map(BigUint::from).collect();
    for _ in 2..=m {
        let mut next = Vec::with_capacity(count);
        for n in 0..count {
            let v = match n {
                0 => BigUint::from(1u8),
                _ => &next[n - 1] + &row[n - 1],
            };
            next.push(v);
        }
        row = next;
    }
    row
}

/// `C_M^N` via the recurrence, for any `M ≥ 1` and `N ≥ 1`.
pub fn cut_number(m: u32, n: u64) -> Result<BigUint> {
    check_dimension(m)?;
    if n == 0 {
        return Err(Error::InvalidParameter("term index N must be at least 1".into()));
    }
    Ok(cut_sequence(m, n as usize).pop().expect("n >= 1"))
}

fn exact_quotient(num: BigInt, den: u32) -> BigUint {
    let q = &num / BigInt::from(den);
    debug_assert_eq!(&q * BigInt::from(den), num, "closed form must divide exactly");
    q.to_biguint().expect("closed forms are positive")
}

/// Per-term closed forms, available for `M ≤ 4`.
pub fn cut_closed_form(m: u32, n: u64) -> Result<BigUint> {
    check_dimension(m)?;
    let x = BigInt::from(n);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let v = match m {
        1 => return Ok(BigUint::from(n)),
        2 => exact_quotient(&x2 - &x + 2, 2),
        3 => exact_quotient(&x3 - 3 * &x2 + 8 * &x, 6),
        4 => exact_quotient(&x3 * &x - 6 * &x3 + 23 * &x2 - 18 * &x + 24, 24),
        _ => return Err(Error::UnsupportedClosedForm(m)),
    };
    Ok(v)
}

/// `Σ_{N=1}^{t} C_M^N` from its closed form, `M ≤ 4`.
pub fn prefix_sum(m: u32, t: u64) -> Result<BigUint> {
    check_dimension(m)?;
    let x = BigInt::from(t);
    let x2 = &x * &x;
    let v = match m {
        1 => exact_quotient(&x * (&x + 1), 2),
        2 => exact_quotient(&x * (&x2 + 5), 6),
        3 => exact_quotient(&x * (&x + 1) * (&x2 - 3 * &x + 14), 24),
        4 => {
            let x3 = &x2 * &x;
            exact_quotient(&x * (&x3 * &x - 5 * &x3 + 25 * &x2 + 5 * &x + 94), 120)
        }
        _ => return Err(Error::UnsupportedClosedForm(m)),
    };
    Ok(v)
}

/// `Σ_{N=1}^{t} C_M^N` by adding up recurrence values; works for every `M`.
pub fn prefix_sum_direct(m: u32, t: u64) -> Result<BigUint> {
    check_dimension(m)?;
    Ok(cut_sequence(m, t as usize).iter().sum())
}

/// `C_M^{t+1} < Σ_{N≤t} C_M^N`, the step that lets a new term be absorbed.
pub fn tail_dominates(m: u32, t: u64) -> Result<bool> {
    Ok(cut_closed_form(m, t + 1)? < prefix_sum(m, t)?)
}

/// Last `t` at which [`tail_dominates`] still fails; it holds for every larger `t`.
pub fn tail_threshold(m: u32) -> Result<u64> {
    match m {
        1 => Ok(2),
        2 => Ok(3),
        3 => Ok(4),
        4 => Ok(5),
        _ => Err(Error::UnsupportedClosedForm(m)),
    }
}
