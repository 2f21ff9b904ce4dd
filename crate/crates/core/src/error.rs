use std::fmt;

use thiserror::Error;

/// Errors raised by the numerical modules and the derivation parser.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state vector norm {norm:e} is below the 1e-12 threshold")]
    ZeroVector { norm: f64 },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("conditioning event has probability {probability:e}, at or below {threshold:e}")]
    UndefinedConditional { probability: f64, threshold: f64 },

    #[error("condition and target must be measured on opposite sides")]
    SameSide,

    #[error("theta = {theta} is outside the allowed domain {domain}")]
    Domain { theta: f64, domain: &'static str },

    #[error("sample and analytic table were computed for different settings")]
    SettingsMismatch,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("step {step} references step {reference}, which is not an earlier step")]
    Index { step: usize, reference: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}
