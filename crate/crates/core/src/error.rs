use thiserror::Error;

use crate::qa_ring::LaurentQA;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact division left a nonzero remainder.
    #[error("not exactly divisible; remainder has {} terms", remainder.num_terms())]
    NotDivisible { remainder: LaurentQA },

    /// The input is not a polynomial in z^2 = q - 2 + q^-1.
    #[error("not in the z^2 basis: {0}")]
    NotZBasis(String),

    /// A series operation needs a unit constant term.
    #[error("series constant term must be one")]
    ConstantTerm,

    #[error("truncation order exceeded: requested {requested}, available {available}")]
    Truncation { requested: usize, available: usize },

    /// A proved integrality or divisibility statement failed. Reaching this is
    /// a bug in the arithmetic, never an expected outcome.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}
