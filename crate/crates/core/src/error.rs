use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VIError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("linesearch failed at iteration {iter} after {trials} trials")]
    LinesearchFailed { iter: usize, trials: usize },

    #[error("ergodic average requested before any update")]
    EmptyErgodic,

    #[error("infeasible point: {0}")]
    Infeasible(String),

    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),

    #[error("optimal objective value is required for the composite energy")]
    MissingOptimalValue,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<(), VIError> {
    if expected == got {
        Ok(())
    } else {
        Err(VIError::DimensionMismatch { expected, got })
    }
}
