//! Command-line front end and file formats for `tandem-core`.
//!
//! - [`records`]: serde records behind the JSON and CSV outputs.
//! - [`input`]: word parsing with alphabet inference, resource caps.
//! - [`cli`]: the `tandem` command.

pub mod cli;
pub mod input;
pub mod records;

/// Anything that makes a command exit with status 1.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Domain(#[from] tandem_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("TANDEM_MAX_SET={0:?} is not a positive integer")]
    BadCap(String),
    #[error("{0}")]
    Invalid(String),
}
