use thiserror::Error;

/// Errors raised by group construction, sumset kernels, closed forms,
/// the exhaustive oracles and the result cache.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cannot parse group literal {literal:?}: {reason}")]
    GroupLiteral { literal: String, reason: String },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("set must be nonempty")]
    EmptySet,

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("search space of {estimate} sets exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("family {family} has no {m}-subsets in this group")]
    InfeasibleFamily { family: &'static str, m: usize },

    #[error("{path}: {reason}")]
    Io { path: String, reason: String },

    #[error("cache journal line {line}: {reason}")]
    CacheCorrupt { line: usize, reason: String },

    #[error("cache already holds {stored} for {key}, refusing to store {new}")]
    CacheConflict { key: String, stored: u64, new: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg_attr(not(feature = "harness"), allow(dead_code))]
pub(crate) fn io_error(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Error {
    Error::Io {
        path: path.as_ref().display().to_string(),
        reason: err.to_string(),
    }
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
