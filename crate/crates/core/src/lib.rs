//! Exact-arithmetic toolkit for semicomplete integer sequences.
//!
//! A strictly increasing positive sequence `n_1, n_2, …` is *semicomplete* when
//! for every `j ≥ 3` each natural `k < ⌊(n_1 + … + n_j)/j⌋` can be written as
//! `(a_1 + … + a_m)/j` with distinct `a_i` drawn from `n_1 … n_j`.
//!
//! * [`exact_arith`]: rationals, Gaussian rationals, half-power Laurent polynomials.
//! * [`sequences`]: arithmetic sequences and hypercube-cut sequences `C_M^N`.
//! * [`partition`]: subset-sum reachability, witnesses and partition counts.
//! * [`checker`]: per-`j` verdicts, horizon scans, the arithmetic classifier,
//!   Brown's criterion and induction certificates.
//! * [`qseries`]: Gaussian binomials, q-Pochhammer products, the double-sum
//!   identity and coefficient modality.
//! * [`pell`]: exact partial products and certified digits of the Pell constant.
//! * [`cli`]: the `semicomplete` command-line front end.

pub mod checker;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod partition;
pub mod pell;
pub mod qseries;
pub mod sequences;

pub use error::{ArithError, Error, Result};
