use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::checker::{ClassifiedCell, InductionCertificate, SemicompletenessReport, Status};
use crate::error::Result;
use crate::exact_arith::HalfQPolynomial;
use crate::pell::PellDigits;
use crate::qseries::{self, ModalityReport, ModalityScan, DoubleSumVerification};

/// Text and CSV renderings; JSON comes from `Serialize`.
pub trait Render {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

fn csv_table<R: AsRef<[String]>>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row.as_ref()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqOutput {
    pub sequence: String,
    #[serde(with = "qseries::biguint_list")]
    pub terms: Vec<BigUint>,
}

impl Render for SeqOutput {
    fn text(&self) -> String {
        format!("{}\n", join(&self.terms, " "))
    }

    fn csv(&self) -> String {
        csv_table(&["n", "term"], self.terms.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.to_string()]))
    }
}

fn status_text(status: &Status) -> String {
    match status {
        Status::VerifiedUpToHorizon { j_max } => format!("verified-up-to-horizon (j <= {j_max})"),
        Status::Refuted { j, k } => format!("refuted at (j={j}, k={k})"),
        Status::RefutedVacuous { note } => format!("refuted-vacuous: {note}"),
        Status::RefutedNotStrict { note } => format!("refuted-not-strict: {note}"),
        Status::CertifiedByInduction { certificate } => format!(
            "certified-by-induction (M={}, t_base={}, tail checked to {})",
            certificate.dimension, certificate.t_base, certificate.tail_checked_to
        ),
    }
}

impl Render for SemicompletenessReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sequence: {}", self.sequence);
        if !self.strictly_increasing {
            let _ = writeln!(out, "note: terms are not strictly increasing");
        }
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "j={} G={} floor(G)={} k=1..{} failures=[{}]",
                v.j,
                v.g,
                v.floor_g,
                v.k_max,
                join(&v.failures, ", ")
            );
            if let Some(ws) = &v.witnesses {
                for (k, w) in ws {
                    let _ = writeln!(out, "  k={} {} = {}", k, w.target, join(&w.values(&v.numerators), " + "));
                }
            }
        }
        let _ = writeln!(out, "status: {}", status_text(&self.status));
        out
    }

    fn csv(&self) -> String {
        csv_table(
            &["j", "g", "floor_g", "k_max", "failures"],
            self.verdicts.iter().map(|v| {
                vec![v.j.to_string(), v.g.to_string(), v.floor_g.to_string(), v.k_max.to_string(), join(&v.failures, ";")]
            }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub a_max: u64,
    pub b_max: u64,
    pub j_max: u64,
    /// `(a, b)` pairs that survived the scan.
    pub verified: Vec<(u64, u64)>,
    pub cells: Vec<ClassifiedCell>,
}

impl ClassifyOutput {
    pub fn new(a_max: u64, b_max: u64, j_max: u64, cells: Vec<ClassifiedCell>) -> Self {
        let verified = cells
            .iter()
            .filter(|c| matches!(c.status, Status::VerifiedUpToHorizon { .. }))
            .map(|c| (c.a, c.b))
            .collect();
        ClassifyOutput { a_max, b_max, j_max, verified, cells }
    }
}

impl Render for ClassifyOutput {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>4} {:>4}  {:<24} counterexample", "a", "b", "status");
        for c in &self.cells {
            let ce = c.status.counterexample().map(|(j, k)| format!("(j={j}, k={k})")).unwrap_or_default();
            let _ = writeln!(out, "{:>4} {:>4}  {:<24} {}", c.a, c.b, c.status.label(), ce);
        }
        let verified: Vec<String> = self.verified.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "verified up to j={}: {}", self.j_max, verified.join(" "));
        out
    }

    fn csv(&self) -> String {
        csv_table(
            &["a", "b", "status", "counterexample_j", "counterexample_k"],
            self.cells.iter().map(|c| {
                let (j, k) = match c.status.counterexample() {
                    Some((j, k)) => (j.to_string(), k.to_string()),
                    None => (String::new(), String::new()),
                };
                vec![c.a.to_string(), c.b.to_string(), c.status.label().to_string(), j, k]
            }),
        )
    }
}

const CERT_HEADER: [&str; 10] = [
    "dimension",
    "t_base",
    "base_total",
    "base_enumeration_ok",
    "tail_checked_to",
    "tail_ok",
    "threshold",
    "threshold_sharp",
    "valid",
    "first_problem",
];

fn cert_fields(c: &InductionCertificate) -> Vec<String> {
    let problem = match (c.base_first_gap, c.tail_first_failure) {
        (Some(g), _) => format!("base misses {g}"),
        (None, Some(t)) => format!("tail fails at t={t}"),
        (None, None) => String::new(),
    };
    vec![
        c.dimension.to_string(),
        c.t_base.to_string(),
        c.base_total.to_string(),
        c.base_enumeration_ok.to_string(),
        c.tail_checked_to.to_string(),
        c.tail_ok.to_string(),
        c.threshold.to_string(),
        c.threshold_sharp.to_string(),
        c.valid.to_string(),
        problem,
    ]
}

impl Render for InductionCertificate {
    fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in CERT_HEADER.iter().zip(cert_fields(self)) {
            if !v.is_empty() {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }

    fn csv(&self) -> String {
        csv_table(&CERT_HEADER, [cert_fields(self)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponent: i64,
    /// Exact rational coefficient, `n` or `n/d`.
    pub coefficient: String,
}

/// A plain polynomial, both rendered and as sparse ascending terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyOutput {
    pub description: String,
    pub polynomial: String,
    pub terms: Vec<PolyTerm>,
}

impl PolyOutput {
    pub fn new(description: String, p: &HalfQPolynomial) -> Result<Self> {
        p.require_plain()?;
        let terms = p.terms().map(|(e, c)| PolyTerm { exponent: e / 2, coefficient: c.re.to_string() }).collect();
        Ok(PolyOutput { description, polynomial: p.to_string(), terms })
    }
}

impl Render for PolyOutput {
    fn text(&self) -> String {
        format!("{} = {}\n", self.description, self.polynomial)
    }

    fn csv(&self) -> String {
        csv_table(&["exponent", "coefficient"], self.terms.iter().map(|t| vec![t.exponent.to_string(), t.coefficient.clone()]))
    }
}

impl Render for DoubleSumVerification {
    fn text(&self) -> String {
        format!(
            "j={}\nnumerator_plain: {}\ndivisible: {}\nF(q) = {}\nresult: {}\n",
            self.j,
            self.numerator_plain,
            self.divisible,
            self.f,
            if self.holds() { "equal" } else { "NOT equal" }
        )
    }

    fn csv(&self) -> String {
        csv_table(
            &["j", "numerator_plain", "divisible", "equals_odd_product"],
            [vec![
                self.j.to_string(),
                self.numerator_plain.to_string(),
                self.divisible.to_string(),
                self.equals_odd_product.to_string(),
            ]],
        )
    }
}

fn modality_label(r: &ModalityReport) -> String {
    serde_json::to_value(r.classification).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

const MODALITY_HEADER: [&str; 4] = ["j", "coefficients", "peak_runs", "classification"];

fn modality_row(r: &ModalityReport) -> Vec<String> {
    vec![r.j.to_string(), join(&r.coefficients, ";"), r.peak_runs.to_string(), modality_label(r)]
}

impl Render for ModalityReport {
    fn text(&self) -> String {
        format!(
            "j={} coefficients=[{}] peak_runs={} {}\n",
            self.j,
            join(&self.coefficients, ", "),
            self.peak_runs,
            modality_label(self)
        )
    }

    fn csv(&self) -> String {
        csv_table(&MODALITY_HEADER, [modality_row(self)])
    }
}

impl Render for ModalityScan {
    fn text(&self) -> String {
        let mut out: String = self.reports.iter().map(Render::text).collect();
        let summary = if self.violations.is_empty() {
            "none".to_string()
        } else {
            join(&self.violations, ", ")
        };
        let _ = writeln!(out, "violations (neither unimodal nor bimodal): {summary}");
        out
    }

    fn csv(&self) -> String {
        csv_table(&MODALITY_HEADER, self.reports.iter().map(modality_row))
    }
}

impl Render for PellDigits {
    fn text(&self) -> String {
        let mut out = format!("{}\n", self.value);
        if self.emitted_digits < self.requested_digits {
            let _ = writeln!(out, "note: only {} of {} digits are certified", self.emitted_digits, self.requested_digits);
        }
        let _ = writeln!(out, "factors: {}", self.factors);
        let _ = writeln!(out, "error_bound: {}", self.error_bound);
        out
    }

    fn csv(&self) -> String {
        csv_table(
            &["requested_digits", "emitted_digits", "value", "factors", "error_bound"],
            [vec![
                self.requested_digits.to_string(),
                self.emitted_digits.to_string(),
                self.value.clone(),
                self.factors.to_string(),
                self.error_bound.clone(),
            ]],
        )
    }
}
