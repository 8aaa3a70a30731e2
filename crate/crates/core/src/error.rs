use thiserror::Error;

/// Errors raised by the workbench.
///
/// Check failures (an axiom that does not hold, a law condition that fails) are
/// never errors; they are recorded in reports and certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("level mismatch: expected level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("level {level} exceeds the model bound {max}")]
    LevelOverflow { level: usize, max: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("law is not certified: {0}")]
    Uncertified(String),
}

impl GammaError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        GammaError::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        GammaError::Unsupported(msg.into())
    }
}

pub type Result<T, E = GammaError> = std::result::Result<T, E>;
