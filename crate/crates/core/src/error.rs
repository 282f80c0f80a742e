use thiserror::Error;

/// Errors raised by the counting, fitting and certificate routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("not Fano: total degree {degree} >= n + 1 = {bound}")]
    NotFano { degree: u32, bound: usize },
    #[error("strategy unsupported: {0}")]
    StrategyUnsupported(String),
    #[error("degenerate subspace: {0}")]
    DegenerateSubspace(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("fit error: {0}")]
    FitError(String),
    #[error("subvariety not contained in the variety: {0}")]
    NotContained(String),
    #[error("invalid parameter `{field}`: {reason}")]
    ParameterError { field: String, reason: String },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("outside the regime of the plane criterion: {0}")]
    OutOfRegime(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(field: &str, reason: impl Into<String>) -> Self {
        Error::ParameterError { field: field.to_string(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
