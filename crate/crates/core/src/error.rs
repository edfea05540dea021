use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The discrete Gram matrix drifted too far from the identity.
    #[error("ill-conditioned measure: Gram residual {residual:.3e} at degree {degree}")]
    IllConditioned { degree: usize, residual: f64 },

    #[error("numeric failure in {context} at iteration {iteration}")]
    NumericFailure { context: String, iteration: usize },

    #[error("empty set: {0}")]
    EmptySet(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code used by the experiment binary: 1 for bad input,
    /// 2 for numerical breakdown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::EmptySet(_) | Error::Io(_) => 1,
            Error::IllConditioned { .. } | Error::NumericFailure { .. } => 2,
        }
    }
}
