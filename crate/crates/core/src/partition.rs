//! Subset-sum reachability, witness extraction and distinct-partition counts.
//!
//! Everything here runs a 0/1 dynamic program over achievable sums stored as a
//! bit-vector of length `1 + Σ values`. Repeated values are separate items, so
//! `{3, 3}` reaches `6`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest total the bit-vector DP is allowed to allocate for.
pub const MAX_TOTAL: u64 = 1 << 32;

/// A finite prefix `n_1 ≤ n_2 ≤ … ≤ n_j` of positive numerators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NumeratorSet {
    values: Vec<u64>,
    total: u64,
    strictly_increasing: bool,
}

impl NumeratorSet {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidNumeratorSet("empty".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidNumeratorSet(format!("{values:?} contains 0")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidNumeratorSet(format!("{values:?} is not sorted")));
        }
        let total = values
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .filter(|&t| t <= MAX_TOTAL)
            .ok_or_else(|| Error::Overflow(format!("sum of {} values", values.len())))?;
        let strictly_increasing = values.windows(2).all(|w| w[0] < w[1]);
        Ok(NumeratorSet { values, total, strictly_increasing })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Whether the "strictly increasing" clause of the definition holds.
    pub fn is_strictly_increasing(&self) -> bool {
        self.strictly_increasing
    }
}

impl TryFrom<Vec<u64>> for NumeratorSet {
    type Error = Error;
    fn try_from(values: Vec<u64>) -> Result<Self> {
        NumeratorSet::new(values)
    }
}

impl From<NumeratorSet> for Vec<u64> {
    fn from(set: NumeratorSet) -> Self {
        set.values
    }
}

impl fmt::Display for NumeratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Set of achievable subset sums, `0 ..= max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSet {
    words: Vec<u64>,
    max: u64,
}

impl SumSet {
    /// `{0}` with room for sums up to `max`.
    fn with_zero(max: u64) -> Self {
        let n_words = (max / 64 + 1) as usize;
        let mut words = vec![0u64; n_words];
        words[0] = 1;
        SumSet { words, max }
    }

    /// `self ∪ (self + shift)`, in place.
    fn absorb(&mut self, shift: u64) {
        if shift > self.max {
            return;
        }
        let word_shift = (shift / 64) as usize;
        let bit_shift = (shift % 64) as u32;
        let n = self.words.len();
        for i in (word_shift..n).rev() {
            let src = i - word_shift;
            let mut v = self.words[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - bit_shift);
            }
            self.words[i] |= v;
        }
        let tail_bits = (self.max % 64 + 1) as u32;
        if tail_bits < 64 {
            self.words[n - 1] &= (1u64 << tail_bits) - 1;
        }
    }

    pub fn contains(&self, s: u64) -> bool {
        s <= self.max && self.words[(s / 64) as usize] >> (s % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.max).filter(move |&s| self.contains(s))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

/// Distinct positions `subset` of a numerator set whose values add to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub target: u64,
    pub subset: Vec<usize>,
}

impl PartitionWitness {
    pub fn values(&self, set: &NumeratorSet) -> Vec<u64> {
        self.subset.iter().map(|&i| set.values()[i]).collect()
    }

    /// Indices in range, strictly ascending, and summing to the target.
    pub fn is_valid_for(&self, set: &NumeratorSet) -> bool {
        self.subset.iter().all(|&i| i < set.len())
            && self.subset.windows(2).all(|w| w[0] < w[1])
            && self.subset.iter().map(|&i| set.values()[i]).sum::<u64>() == self.target
    }
}

/// Suffix reachability tables for answering many targets against one set.
///
/// `suffix[i]` holds the sums reachable from `values[i..]`, which is what a
/// forward greedy scan needs to pick the lexicographically smallest index set.
#[derive(Clone, Debug)]
pub struct SubsetSums {
    set: NumeratorSet,
    suffix: Vec<SumSet>,
}

impl SubsetSums {
    pub fn new(set: &NumeratorSet) -> Self {
        let total = set.total();
        let j = set.len();
        let mut suffix = vec![SumSet::with_zero(total); j + 1];
        for i in (0..j).rev() {
            let mut next = suffix[i + 1].clone();
            next.absorb(set.values()[i]);
            suffix[i] = next;
        }
        SubsetSums { set: set.clone(), suffix }
    }

    pub fn set(&self) -> &NumeratorSet {
        &self.set
    }

    pub fn sums(&self) -> &SumSet {
        &self.suffix[0]
    }

    pub fn reachable(&self, target: u64) -> bool {
        self.suffix[0].contains(target)
    }

    pub fn witness(&self, target: u64) -> Option<PartitionWitness> {
        if !self.reachable(target) {
            return None;
        }
        let mut remaining = target;
        let mut subset = Vec::new();
        for (i, &v) in self.set.values().iter().enumerate() {
            if remaining == 0 {
                break;
            }
            if v <= remaining && self.suffix[i + 1].contains(remaining - v) {
                subset.push(i);
                remaining -= v;
            }
        }
        debug_assert_eq!(remaining, 0);
        Some(PartitionWitness { target, subset })
    }
}

/// Sums achievable by subsets of `values`; always contains `0` and `Σ values`.
pub fn reachable_set(values: &NumeratorSet) -> SumSet {
    let mut sums = SumSet::with_zero(values.total());
    for &v in values.values() {
        sums.absorb(v);
    }
    sums
}

pub fn reachable(values: &NumeratorSet, target: u64) -> bool {
    target <= values.total() && reachable_set(values).contains(target)
}

/// Lexicographically smallest index set summing to `target`, if any.
pub fn witness(values: &NumeratorSet, target: u64) -> Option<PartitionWitness> {
    if target > values.total() {
        return None;
    }
    SubsetSums::new(values).witness(target)
}

/// `counts[s]` = number of index subsets summing to `s`, for `s ∈ 0..=Σ values`.
/// These are the coefficients of `∏ (1 + q^{n_i})`.
pub fn partition_counts(values: &NumeratorSet) -> Vec<BigUint> {
    let total = values.total() as usize;
    let mut counts = vec![BigUint::zero(); total + 1];
    counts[0] = BigUint::one();
    let mut reach = 0usize;
    for &v in values.values() {
        let v = v as usize;
        reach += v;
        for s in (v..=reach).rev() {
            if !counts[s - v].is_zero() {
                let add = counts[s - v].clone();
                counts[s] += add;
            }
        }
    }
    counts
}

pub fn count_distinct_partitions(values: &NumeratorSet, target: u64) -> BigUint {
    if target > values.total() {
        return BigUint::zero();
    }
    partition_counts(values).swap_remove(target as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> NumeratorSet {
        NumeratorSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(NumeratorSet::new(vec![]).is_err());
        assert!(NumeratorSet::new(vec![0, 1]).is_err());
        assert!(NumeratorSet::new(vec![3, 2]).is_err());
        assert!(NumeratorSet::new(vec![u64::MAX, 1]).is_err());
        assert!(set(&[3, 3, 3]).total() == 9 && !set(&[3, 3, 3]).is_strictly_increasing());
        assert!(set(&[1, 3, 5]).is_strictly_increasing());
    }

    #[test]
    fn reachability_examples() {
        assert!(!reachable(&set(&[3, 4, 5]), 6));
        assert!(reachable(&set(&[1, 3, 5]), 6));
        assert!(reachable(&set(&[7, 9]), 0));
        assert!(!reachable(&set(&[7, 9]), 100));
    }

    #[test]
    fn witness_examples() {
        let caterer = set(&[1, 2, 4, 7, 11]);
        let w = witness(&caterer, 20).unwrap();
        let mut vals = w.values(&caterer);
        vals.sort_unstable();
        assert_eq!(vals, vec![2, 7, 11]);
        assert!(w.is_valid_for(&caterer));

        let four = set(&[1, 2, 4, 7]);
        assert_eq!(witness(&four, 13).unwrap().values(&four), vec![2, 4, 7]);
        assert_eq!(witness(&set(&[3, 4, 5]), 6), None);
        assert_eq!(witness(&four, 0).unwrap().subset, Vec::<usize>::new());
    }

    #[test]
    fn witness_prefers_smallest_index_set() {
        // 3 = 1+2 = 3; index sets {0,1} and {2}; {0,1} sorts first
        let s = set(&[1, 2, 3]);
        assert_eq!(witness(&s, 3).unwrap().subset, vec![0, 1]);
        // duplicates: the first copies are used
        let d = set(&[3, 3, 3, 3]);
        assert_eq!(witness(&d, 6).unwrap().subset, vec![0, 1]);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_distinct_partitions(&set(&[1, 3, 5, 7]), 8), BigUint::from(2u8));
        assert_eq!(count_distinct_partitions(&set(&[1, 3, 5]), 9), BigUint::from(1u8));
        assert_eq!(count_distinct_partitions(&set(&[1, 3, 5]), 2), BigUint::zero());
        assert_eq!(count_distinct_partitions(&set(&[1, 3, 5]), 99), BigUint::zero());
        assert_eq!(count_distinct_partitions(&set(&[2, 2, 2]), 4), BigUint::from(3u8));
    }

    #[test]
    fn reachable_set_examples() {
        assert_eq!(reachable_set(&set(&[3, 4, 5])).to_vec(), vec![0, 3, 4, 5, 7, 8, 9, 12]);
        assert_eq!(reachable_set(&set(&[1])).to_vec(), vec![0, 1]);
        assert_eq!(reachable_set(&set(&[1, 2, 4, 7])).to_vec(), (0..=14).collect::<Vec<_>>());
    }

    #[test]
    fn shifts_across_word_boundaries() {
        let s = set(&[63, 64, 65, 130]);
        let sums = reachable_set(&s);
        for t in [0, 63, 64, 65, 127, 128, 129, 130, 192, 193, 194, 195, 259, 322] {
            assert!(sums.contains(t), "{t}");
        }
        assert!(!sums.contains(1) && !sums.contains(321));
        assert_eq!(sums.len(), 16);
    }
}
