use std::io;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// The pass never rises above the minimum service elevation.
    #[error("infeasible pass: max elevation {max_deg} deg is below min elevation {min_deg} deg")]
    EmptyPass { max_deg: f64, min_deg: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// A solver failed to meet its tolerance.
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("profile needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("ensemble of {got} draws is below the minimum of {min}")]
    InsufficientEnsemble { min: usize, got: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("table error in {file}: {msg}")]
    TableFormat { file: String, msg: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
