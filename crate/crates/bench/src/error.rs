use thiserror::Error;
use vi_core::VIError;

#[derive(Debug, Error)]
pub enum BenchError {
    /// Flags that are malformed, out of range, or do not fit the problem.
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error(transparent)]
    Solver(#[from] VIError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed trace file: {0}")]
    Malformed(String),
}

impl BenchError {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit code for this error: 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::InvalidArgs(_) | BenchError::Solver(VIError::InvalidConfig(_)) => 2,
            _ => 1,
        }
    }
}
