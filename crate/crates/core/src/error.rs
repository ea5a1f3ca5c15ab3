use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid, quadrature or window parameters that cannot produce a valid result.
    #[error("configuration error: {0}")]
    Config(String),

    /// The input violates an accuracy precondition; `measured` is the offending quantity.
    #[error("accuracy error: {what} (measured {measured:e}, tolerance {tolerance:e})")]
    Accuracy {
        what: &'static str,
        measured: f64,
        tolerance: f64,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("symbol evaluated to a non-finite value at ({xi}, {eta})")]
    NonFinite { xi: f64, eta: f64 },

    /// Failure inside one trial of a randomized estimate.
    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
