use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants are grouped by how a caller is expected to react: bad input
/// (`Parse`, `InvalidInput`), missing model data, resource guards, and
/// internal consistency failures that indicate a bug rather than misuse.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("series is not invertible: constant coefficient {0} is not a unit")]
    NotInvertible(String),

    #[error("evaluation at L^-{m} diverges for dimension {d} (need m > d)")]
    Divergence { m: i64, d: i64 },

    #[error("model cannot supply {0}")]
    InsufficientModelData(String),

    #[error("specialization {target} is not supported by model {model}")]
    UnsupportedSpecialization { target: String, model: String },

    #[error("invalid point-count data: {0}")]
    InvalidCounts(String),

    #[error("enumeration of {states} states exceeds the guard of {guard}")]
    GuardExceeded { states: u128, guard: u128 },

    #[error("multiplicity profiles {0} and {1} are incomparable in the merge order")]
    IncomparableProfiles(String, String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
