//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested tolerance could not be met; carries the achieved estimate.
    #[error("accuracy error in {context}: achieved {achieved:.3e}, requested {requested:.3e}")]
    Accuracy {
        context: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// Fixed-point iteration ran out of iterations.
    #[error("no convergence after {iterations} iterations (last residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// Malformed or non-finite input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Grid too coarse for the requested probe or estimate.
    #[error("insufficient resolution: {0}")]
    Resolution(String),

    /// Failure attributable to a single spectral mode.
    #[error("mode {index}: {source}")]
    Mode {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn in_mode(self, index: usize) -> Self {
        Error::Mode {
            index,
            source: Box::new(self),
        }
    }
}
