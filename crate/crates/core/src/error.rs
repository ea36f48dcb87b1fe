use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a mathematical function.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    /// A stopping configuration or simulation plan is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called in a state that does not allow it.
    #[error("usage error: {0}")]
    Usage(String),

    /// An observation or dataset violates the model assumptions.
    #[error("data error: {0}")]
    Data(String),

    #[error("series did not reach the truncation threshold within {terms} terms")]
    SeriesDiverged { terms: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input file; `line` is 1-based.
    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    /// An error raised while processing one row of a batch.
    #[error("row {index}: {source}")]
    Row {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// True for errors caused by reading or parsing input files.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Io { .. } | Error::Parse { .. } => true,
            Error::Row { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}
