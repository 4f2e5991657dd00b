use thiserror::Error;

/// Errors produced by the helix engine and its constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HelixError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Δ-invariant of the seed is not positive.
    #[error("not a helix seed: Δ{index} = {value} ≤ 0")]
    NotHelixSeed { index: usize, value: String },

    /// A family or constructor precondition failed; the message names the inequality.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A computed seed violates a seed invariant.
    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    /// Something that cannot happen for valid input happened anyway.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, HelixError>;
