use thiserror::Error;

use crate::Input;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: arity {arity} exceeds the configured limit {limit}")]
    Capacity {
        what: &'static str,
        arity: usize,
        limit: usize,
    },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    OutOfRange(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid block family: {0}")]
    InvalidBlocks(String),

    #[error("property violated: {0}")]
    PropertyViolation(String),

    #[error("not in compact form: {0}")]
    CompactForm(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("composition refused: {0}")]
    CompositionRefused(String),

    #[error("ball radius {radius} is below the required {required}")]
    InsufficientRadius { radius: usize, required: usize },

    #[error("ball data contradicts sensitivity bound {bound} at input {input:#x} (distance {distance}): {detail}")]
    SensitivityBoundViolated {
        bound: usize,
        input: Input,
        distance: usize,
        detail: String,
    },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("no input reaches the requested sensitivity: {0}")]
    NoSolution(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
