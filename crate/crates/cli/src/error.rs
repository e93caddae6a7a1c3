use std::path::PathBuf;

use thiserror::Error;

/// Everything that makes the tool exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}:{line}: {message}", path.display())]
    Input {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    File { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] anarchy_core::Error),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
