//! Error types shared across the library.

use thiserror::Error;

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// An iterative method did not reach its tolerance. Carries the best
    /// estimate so callers can decide whether it is still usable.
    #[error("{op} did not converge (best estimate {best}, error {err_estimate})")]
    Convergence {
        op: &'static str,
        best: f64,
        err_estimate: f64,
    },

    /// A root finder was handed an interval without a sign change.
    #[error("no sign change bracketed by [{lo}, {hi}] in {op}")]
    Bracket { op: &'static str, lo: f64, hi: f64 },

    /// Conditional channel laws collapse to a point mass at `sigma_p_sq = 0`;
    /// callers must branch to the perfect-CSI expressions instead.
    #[error("degenerate conditional law at sigma_p_sq = 0 in {op}")]
    DegenerateModel { op: &'static str },

    /// Quantile requested at probability 1 of an unbounded law.
    #[error("infinite quantile requested in {op}")]
    InfiniteQuantile { op: &'static str },

    /// An operation was invoked on a value that violates its contract
    /// (e.g. a closed form that only holds for a specific model).
    #[error("contract violation in {op}: {msg}")]
    Contract { op: &'static str, msg: String },

    /// Invalid experiment configuration; `field` names the offending key.
    #[error("invalid configuration field `{field}`: {msg}")]
    InvalidConfig { field: String, msg: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }

    pub(crate) fn contract(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Contract {
            op,
            msg: msg.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            msg: msg.into(),
        }
    }
}
