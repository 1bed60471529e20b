use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the optimizer, the metrics and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration for `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("approximation set is empty")]
    EmptyApproximation,

    #[error("reference front is empty")]
    EmptyReference,

    #[error("no structure logs found: {0}")]
    MissingStructureLogs(String),

    #[error("malformed file {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
