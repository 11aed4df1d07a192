//! Crate-wide error type.
//!
//! Errors are split by who is at fault: `Domain` means the caller passed
//! parameters outside a documented contract, `Accuracy` means a numerical
//! cross-check failed to reach its stated tolerance, `Instability` means a
//! recursion or integration left its monitored validity region. The CLI maps
//! these to distinct exit codes (2 for domain, 3 for accuracy/instability).

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// Parameter outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical result failed an internal accuracy cross-check.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A recursion or integration violated a monitored invariant.
    /// `last_good` is the last index at which the invariant held.
    #[error("instability after index {last_good}: {message}")]
    Instability { message: String, last_good: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Accuracy(_) | Error::Instability { .. } => 3,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
        }
    }
}
