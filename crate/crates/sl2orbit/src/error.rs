//! Error taxonomy shared by every module.
//!
//! `InvalidInput`/`InvalidWord`/`IndexOutOfRange`/`InvalidRequest` flag malformed
//! requests (CLI exit 1); the remaining variants are numerical or structural
//! failures discovered mid-computation (CLI exit 2).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite entry, wrong dimensions, or an otherwise malformed object.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A word referenced a generator index outside 1..=n or used a zero letter.
    #[error("invalid word: {0}")]
    InvalidWord(String),

    /// A 1-based index pair/triple was out of range or had repeats where
    /// distinct indices are required.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Operation requires the SL(2,C) flag and the tuple does not carry it.
    #[error("tuple is not SL(2,C): {0}")]
    NotSL2(String),

    /// A requested conjugation used a matrix with vanishing determinant.
    #[error("singular conjugator: {0}")]
    SingularConjugator(String),

    /// Trace coordinate not present in the (3n-3)-coordinate layout.
    #[error("coordinate unavailable: {0}")]
    CoordinateUnavailable(String),

    /// Structural precondition violated (e.g. operation on a tuple of the
    /// wrong shape, or a normal form requested where none is defined).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Generator fixing requires an irreducible representation.
    #[error("not irreducible: {0}")]
    NotIrreducible(String),

    /// A component had degenerate eigenvalues where distinct ones are needed.
    #[error("degenerate eigenvalues: {0}")]
    DegenerateEigenvalues(String),

    /// Fiber enumeration was handed a base point violating its contract.
    #[error("invalid base point: {0}")]
    InvalidBase(String),

    /// The computation could not be completed to tolerance.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Malformed CLI request (bad JSON, schema violation). Carries a path to
    /// the offending field when one is known.
    #[error("invalid request at {path}: {message}")]
    InvalidRequest { path: String, message: String },
}

impl Error {
    /// CLI exit code class: 1 for request/schema problems, 2 for numerical or
    /// structural failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::InvalidWord(_)
            | Error::IndexOutOfRange(_)
            | Error::InvalidRequest { .. } => 1,
            _ => 2,
        }
    }

    /// Stable machine-readable code for CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidWord(_) => "invalid-word",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::NotSL2(_) => "not-sl2",
            Error::SingularConjugator(_) => "singular-conjugator",
            Error::CoordinateUnavailable(_) => "coordinate-unavailable",
            Error::NotApplicable(_) => "not-applicable",
            Error::NotIrreducible(_) => "not-irreducible",
            Error::DegenerateEigenvalues(_) => "degenerate-eigenvalues",
            Error::InvalidBase(_) => "invalid-base",
            Error::NumericalFailure(_) => "numerical-failure",
            Error::InvalidRequest { .. } => "invalid-request",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
