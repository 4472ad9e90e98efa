use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("resonance pole: {0}")]
    Pole(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid material definition: {0}")]
    Material(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence(_) | Error::NoRoot(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
