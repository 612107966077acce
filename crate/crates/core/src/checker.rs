//! Semicompleteness verdicts.
//!
//! A strictly increasing positive sequence is semicomplete when, for every
//! `j ≥ 3`, each natural `k < ⌊G⌋` with `G = (n_1 + … + n_j) / j` makes `k·j` a
//! sum of distinct terms among `n_1 … n_j`. Finite scans can only refute or
//! verify up to a horizon; the induction certificate is the one route to a
//! proof, and only for the hypercube-cut families.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::partition::{reachable_set, NumeratorSet, PartitionWitness, SubsetSums};
use crate::sequences::{self, ArithmeticSpec, HypercubeCutSpec, SequenceSource};

/// Smallest `j` covered by the definition.
pub const J_MIN: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Record a witness for every reachable `k·j`.
    pub witnesses: bool,
    /// Allow `j < 3`; such verdicts are marked out-of-definition.
    pub allow_out_of_definition: bool,
}

/// Outcome for one prefix length `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JVerdict {
    pub j: usize,
    pub numerators: NumeratorSet,
    /// `G` as an exact fraction, rendered `n/d`.
    #[serde(with = "rational_string")]
    pub g: Rational,
    pub floor_g: u64,
    /// Largest `k` tested, `⌊G⌋ - 1`; zero means the range is empty.
    pub k_max: u64,
    pub failures: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<u64, PartitionWitness>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub out_of_definition: bool,
}

impl JVerdict {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn k_range_is_empty(&self) -> bool {
        self.k_max == 0
    }
}

/// Tests every `k` in `1 ..= ⌊G⌋ - 1` for the given prefix of length `j`.
pub fn check_at_j(values: &NumeratorSet, j: usize) -> Result<JVerdict> {
    check_at_j_with(values, j, CheckOptions::default())
}

pub fn check_at_j_with(values: &NumeratorSet, j: usize, options: CheckOptions) -> Result<JVerdict> {
    if values.len() != j {
        return Err(Error::Precondition(format!("expected {j} numerators, got {}", values.len())));
    }
    if j < J_MIN && !options.allow_out_of_definition {
        return Err(Error::JOutOfDefinition(j));
    }
    let g = Rational::new(values.total(), j as u64)?;
    let floor_g = g.floor().to_u64().expect("G is non-negative and bounded by the total");
    let k_max = floor_g.saturating_sub(1);
    let sums = SubsetSums::new(values);
    let mut failures = Vec::new();
    let mut witnesses = options.witnesses.then(BTreeMap::new);
    for k in 1..=k_max {
        let target = k * j as u64;
        match (sums.reachable(target), witnesses.as_mut()) {
            (false, _) => failures.push(k),
            (true, Some(w)) => {
                w.insert(k, sums.witness(target).expect("reachable target has a witness"));
            }
            (true, None) => {}
        }
    }
    Ok(JVerdict {
        j,
        numerators: values.clone(),
        g,
        floor_g,
        k_max,
        failures,
        witnesses,
        out_of_definition: j < J_MIN,
    })
}

/// Aggregate status of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Status {
    /// No failure for any `3 ≤ j ≤ j_max`. Not a proof.
    VerifiedUpToHorizon { j_max: usize },
    /// Smallest failing `(j, k)` in lexicographic order.
    Refuted { j: usize, k: u64 },
    /// Every `k`-range was empty, so no `k` can fail, but the sequence is not
    /// strictly increasing and is excluded by definition.
    RefutedVacuous { note: String },
    /// No failing `k`, but the sequence is not strictly increasing.
    RefutedNotStrict { note: String },
    CertifiedByInduction { certificate: InductionCertificate },
}

impl Status {
    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            Status::Refuted { .. } | Status::RefutedVacuous { .. } | Status::RefutedNotStrict { .. }
        )
    }

    pub fn counterexample(&self) -> Option<(usize, u64)> {
        match self {
            Status::Refuted { j, k } => Some((*j, *k)),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::VerifiedUpToHorizon { .. } => "verified-up-to-horizon",
            Status::Refuted { .. } => "refuted",
            Status::RefutedVacuous { .. } => "refuted-vacuous",
            Status::RefutedNotStrict { .. } => "refuted-not-strict",
            Status::CertifiedByInduction { .. } => "certified-by-induction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemicompletenessReport {
    pub sequence: String,
    pub j_min: usize,
    pub j_max: usize,
    /// Whether every inspected prefix was strictly increasing.
    pub strictly_increasing: bool,
    pub verdicts: Vec<JVerdict>,
    pub status: Status,
}

/// Runs [`check_at_j`] for `j = 3 ..= j_max`, stopping at the first failure.
pub fn check_up_to(source: &dyn SequenceSource, j_max: usize, options: CheckOptions) -> Result<SemicompletenessReport> {
    if j_max < J_MIN {
        return Err(Error::Precondition(format!("j_max must be at least {J_MIN}, got {j_max}")));
    }
    let mut verdicts = Vec::new();
    let mut strictly_increasing = true;
    let mut refuted = None;
    for j in J_MIN..=j_max {
        let values = source.prefix(j)?;
        strictly_increasing &= values.is_strictly_increasing();
        let verdict = check_at_j_with(&values, j, options)?;
        if let Some(&k) = verdict.failures.first() {
            refuted = Some(Status::Refuted { j, k });
        }
        verdicts.push(verdict);
        if refuted.is_some() {
            break;
        }
    }
    let status = match refuted {
        Some(s) => s,
        None if !strictly_increasing && verdicts.iter().all(JVerdict::k_range_is_empty) => Status::RefutedVacuous {
            note: "k-range empty for every j (no k can fail); excluded because the terms do not strictly increase"
                .into(),
        },
        None if !strictly_increasing => Status::RefutedNotStrict {
            note: "every tested k has a partition, but the terms do not strictly increase".into(),
        },
        None => Status::VerifiedUpToHorizon { j_max },
    };
    Ok(SemicompletenessReport { sequence: source.describe(), j_min: J_MIN, j_max, strictly_increasing, verdicts, status })
}

/// Replaces a verified-up-to-horizon status by the certificate when it is valid.
pub fn upgrade_with_certificate(report: &mut SemicompletenessReport, certificate: InductionCertificate) {
    if matches!(report.status, Status::VerifiedUpToHorizon { .. }) && certificate.is_valid() {
        report.status = Status::CertifiedByInduction { certificate };
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedCell {
    pub a: u64,
    pub b: u64,
    pub status: Status,
}

/// Scans every arithmetic sequence with `1 ≤ a ≤ a_max`, `0 ≤ b ≤ b_max`.
///
/// Cells are independent and evaluated in parallel; the result is sorted by
/// `(a, b)`.
pub fn classify_arithmetic(a_max: u64, b_max: u64, j_max: usize) -> Result<Vec<ClassifiedCell>> {
    if a_max < 1 || b_max < 1 {
        return Err(Error::Precondition("a_max and b_max must be at least 1".into()));
    }
    if j_max < 4 {
        return Err(Error::Precondition(format!("j_max must be at least 4, got {j_max}")));
    }
    let cells: Vec<(u64, u64)> = (1..=a_max).flat_map(|a| (0..=b_max).map(move |b| (a, b))).collect();
    let mut out = cells
        .into_par_iter()
        .map(|(a, b)| {
            let spec = ArithmeticSpec::new(a, b)?;
            let report = check_up_to(&spec, j_max, CheckOptions::default())?;
            Ok(ClassifiedCell { a, b, status: report.status })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|c| (c.a, c.b));
    Ok(out)
}

/// Brown's criterion on a finite sorted prefix: the first term is 1 and each
/// term is at most one more than the sum of the terms before it.
pub fn brown_complete(values: &NumeratorSet) -> bool {
    let v = values.values();
    if v[0] != 1 {
        return false;
    }
    let mut running: u128 = 0;
    for &x in v {
        if u128::from(x) > running + 1 {
            return false;
        }
        running += u128::from(x);
    }
    true
}

/// `(Σ{2, …, j+1} − 1) / j`, the quotient for the one unreachable sum just
/// below the total of `{2, 3, …, j+1}`.
pub fn unreachable_top_quotient(j: u64) -> Rational {
    let total: u64 = (2..=j + 1).sum();
    Rational::new(total - 1, j).expect("j >= 1")
}

/// Base case plus tail inequality for `{C_M^N}`, `M ≤ 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionCertificate {
    pub dimension: u32,
    pub t_base: u64,
    /// `Σ_{N ≤ t_base} C_M^N`; the base case must reach every integer up to it.
    pub base_total: u64,
    pub base_enumeration_ok: bool,
    /// Smallest integer in `1 ..= base_total` the base terms miss, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_first_gap: Option<u64>,
    pub tail_checked_to: u64,
    pub tail_ok: bool,
    /// First `t` in the tail range where the inequality fails, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_first_failure: Option<u64>,
    /// Largest `t` at which the tail inequality fails.
    pub threshold: u64,
    /// The inequality fails at `threshold` and holds at `threshold + 1`.
    pub threshold_sharp: bool,
    pub valid: bool,
}

impl InductionCertificate {
    pub fn is_valid(&self) -> bool {
        self.base_enumeration_ok && self.tail_ok
    }
}

/// Lowest admissible `t_base - 1` per dimension.
pub fn certificate_threshold(m: u32) -> Result<u64> {
    match m {
        1 | 2 => Ok(3),
        3 => Ok(4),
        4 => Ok(5),
        _ => Err(Error::Precondition(format!("induction certificates cover M = 1..4, got {m}"))),
    }
}

pub fn induction_certificate(m: u32, t_base: u64, tail_horizon: u64) -> Result<InductionCertificate> {
    let threshold = certificate_threshold(m)?;
    if t_base <= threshold {
        return Err(Error::Precondition(format!("t_base must exceed {threshold} for M = {m}, got {t_base}")));
    }
    if tail_horizon < t_base {
        return Err(Error::Precondition(format!("tail horizon {tail_horizon} is below t_base {t_base}")));
    }
    let base = HypercubeCutSpec::new(m)?.prefix(t_base as usize)?;
    let base_total = sequences::prefix_sum(m, t_base)?
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("prefix sum at t = {t_base}")))?;
    if base_total != base.total() {
        return Err(Error::IdentityViolation(format!(
            "closed-form prefix sum {base_total} differs from direct sum {}",
            base.total()
        )));
    }
    let sums = reachable_set(&base);
    let base_first_gap = (1..=base_total).find(|&s| !sums.contains(s));

    let mut tail_first_failure = None;
    for t in t_base..=tail_horizon {
        if !sequences::tail_dominates(m, t)? {
            tail_first_failure = Some(t);
            break;
        }
    }
    let sharp_at = sequences::tail_threshold(m)?;
    let threshold_sharp = !sequences::tail_dominates(m, sharp_at)? && sequences::tail_dominates(m, sharp_at + 1)?;

    let mut cert = InductionCertificate {
        dimension: m,
        t_base,
        base_total,
        base_enumeration_ok: base_first_gap.is_none(),
        base_first_gap,
        tail_checked_to: tail_horizon,
        tail_ok: tail_first_failure.is_none(),
        tail_first_failure,
        threshold: sharp_at,
        threshold_sharp,
        valid: false,
    };
    cert.valid = cert.is_valid();
    Ok(cert)
}

mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact_arith::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> NumeratorSet {
        NumeratorSet::new(v.to_vec()).unwrap()
    }

    fn arith(a: u64, b: u64) -> ArithmeticSpec {
        ArithmeticSpec::new(a, b).unwrap()
    }

    #[test]
    fn odd_numerators_pass_at_five() {
        let v = check_at_j(&set(&[1, 3, 5, 7, 9]), 5).unwrap();
        assert!(v.passes());
        assert_eq!(v.g, Rational::from(5));
        assert_eq!(v.k_max, 4);
    }

    #[test]
    fn known_counterexamples() {
        assert_eq!(check_at_j(&set(&[3, 4, 5]), 3).unwrap().failures, vec![2]);
        assert_eq!(check_at_j(&set(&[3, 3, 3, 3]), 4).unwrap().failures.first(), Some(&1));
        assert!(check_at_j(&set(&[3, 3, 3]), 3).unwrap().passes());
    }

    #[test]
    fn domain_errors() {
        assert_eq!(check_at_j(&set(&[1, 2]), 2), Err(Error::JOutOfDefinition(2)));
        let opts = CheckOptions { allow_out_of_definition: true, ..Default::default() };
        assert!(check_at_j_with(&set(&[1, 2]), 2, opts).unwrap().out_of_definition);
        assert!(check_at_j(&set(&[1, 2, 3]), 4).is_err());
        assert!(check_up_to(&arith(1, 2), 2, CheckOptions::default()).is_err());
    }

    #[test]
    fn witnesses_are_recorded() {
        let opts = CheckOptions { witnesses: true, ..Default::default() };
        let v = check_at_j_with(&set(&[1, 3, 5, 7]), 4, opts).unwrap();
        let w = v.witnesses.unwrap();
        assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(w[&2].values(&v.numerators), vec![1, 7]);
    }

    #[test]
    fn scans() {
        let odd = check_up_to(&arith(1, 2), 12, CheckOptions::default()).unwrap();
        assert_eq!(odd.status, Status::VerifiedUpToHorizon { j_max: 12 });
        assert_eq!(odd.verdicts.len(), 10);
        let r = check_up_to(&arith(1, 3), 12, CheckOptions::default()).unwrap();
        assert_eq!(r.status, Status::Refuted { j: 3, k: 1 });
        assert_eq!(r.verdicts.len(), 1);
        let twos = check_up_to(&arith(2, 0), 12, CheckOptions::default()).unwrap();
        assert_eq!(twos.status, Status::Refuted { j: 3, k: 1 });
        assert!(!twos.strictly_increasing);
        let ones = check_up_to(&arith(1, 0), 12, CheckOptions::default()).unwrap();
        assert!(matches!(ones.status, Status::RefutedVacuous { .. }));
    }

    #[test]
    fn classifier_cells() {
        let cells = classify_arithmetic(3, 3, 6).unwrap();
        let find = |a, b| cells.iter().find(|c| c.a == a && c.b == b).unwrap().status.clone();
        assert_eq!(find(3, 3), Status::Refuted { j: 4, k: 1 });
        assert_eq!(find(2, 1), Status::VerifiedUpToHorizon { j_max: 6 });
        assert!(matches!(find(1, 0), Status::RefutedVacuous { .. }));
        assert!(classify_arithmetic(3, 3, 3).is_err());
        assert!(classify_arithmetic(0, 3, 6).is_err());
    }

    #[test]
    fn brown_examples() {
        assert!(brown_complete(&set(&[1, 2, 4, 7, 11])));
        assert!(!brown_complete(&set(&[1, 3, 5, 7])));
        assert!(brown_complete(&set(&[1, 1, 1])));
        assert!(!brown_complete(&set(&[2, 3])));
    }

    #[test]
    fn certificate_examples() {
        let c2 = induction_certificate(2, 4, 10_000).unwrap();
        assert!(c2.valid && c2.threshold_sharp);
        assert_eq!(c2.base_total, 14);
        assert!(induction_certificate(3, 5, 10_000).unwrap().valid);
        assert!(matches!(induction_certificate(2, 3, 10), Err(Error::Precondition(_))));
        assert!(induction_certificate(5, 9, 10).is_err());
        assert!(induction_certificate(2, 6, 5).is_err());
    }

    #[test]
    fn top_quotient_matches_closed_form() {
        let j = 7u64;
        let closed = Rational::new(j, 2).unwrap() - Rational::new(1, j).unwrap() + Rational::new(3, 2).unwrap();
        assert_eq!(unreachable_top_quotient(j), closed);
        assert!(!unreachable_top_quotient(j).is_integer());
    }

    #[test]
    fn report_json_round_trip() {
        let opts = CheckOptions { witnesses: true, ..Default::default() };
        let report = check_up_to(&arith(3, 1), 6, opts).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: SemicompletenessReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
