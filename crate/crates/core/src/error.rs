use thiserror::Error;

use crate::exact_arith::HalfQPolynomial;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
    #[error("polynomial division leaves remainder {remainder}")]
    NotDivisible { remainder: Box<HalfQPolynomial> },
    #[error("polynomial has half-integer powers or non-real coefficients: {0}")]
    NotPlain(Box<HalfQPolynomial>),
    #[error("expected a single monomial, found {0}")]
    NotMonomial(Box<HalfQPolynomial>),
}

/// Errors raised by the sequence, partition, checker, q-series and Pell layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("closed forms are only available for dimensions 1 through 4, got {0}")]
    UnsupportedClosedForm(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("numerator sets must be non-empty, positive and non-decreasing: {0}")]
    InvalidNumeratorSet(String),
    #[error("value {0} does not fit in a machine word")]
    Overflow(String),
    #[error("j = {0} is outside the definition (j must be at least 3)")]
    JOutOfDefinition(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
