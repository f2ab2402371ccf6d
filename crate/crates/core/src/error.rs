use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is zero or unknown; series is not invertible")]
    NotInvertible,
    #[error(
        "cannot invert an exact polynomial with more than one term without truncating it first"
    )]
    NeedsTruncation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("vertex enumeration exceeded the state budget of {budget} (legs {legs}, K = {k})")]
    BudgetExceeded { budget: u64, legs: String, k: usize },
    #[error("elliptic genus coefficient c({0}) lies outside the computed truncation")]
    CoefficientOutOfRange(i64),
    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
