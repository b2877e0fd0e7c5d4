use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("branch index {index} out of range for {branches} branches")]
    IndexOutOfRange { index: usize, branches: usize },

    #[error("inexact division: {0}")]
    Divisibility(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("truncation order {order} is insufficient; retry with at least {suggested}")]
    TruncationInsufficient { order: usize, suggested: usize },

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("inconsistent provider data: {0}")]
    Inconsistent(String),

    #[error("operation needs an exact polynomial but got a truncated series: {0}")]
    Truncated(String),

    #[error("certified window does not cover the requested box: {0}")]
    WindowTooSmall(String),

    #[error("not a plane-branch semigroup: {0}")]
    NotPlaneBranch(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("no symmetric intersection matrix matches the factor multisets")]
    XiInconsistent,

    #[error("lattice box of {points} points exceeds the limit of {limit}")]
    BoxTooLarge { points: u128, limit: u128 },

    #[error("invalid field: {0}")]
    Field(String),
}

pub type Result<T> = std::result::Result<T, Error>;
