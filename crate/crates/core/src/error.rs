use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not skew-symmetric (max |S + S^T| = {residual:e})")]
    NotSkewSymmetric { residual: f64 },

    #[error("matrix is not an augmented skew-symmetric matrix (residual {residual:e})")]
    NotAugmentedSkew { residual: f64 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("dimension mismatch: expected {expected} joint values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid ETS: {0}")]
    InvalidEts(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("joint limit error: {0}")]
    Limit(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns `DimensionMismatch` unless `got == expected`.
pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
