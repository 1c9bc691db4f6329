use std::io;
use std::path::PathBuf;

use pursuit_core::Error as CoreError;

/// A malformed line in a PACE or cache file.
#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("soundness check failed: {0}")]
    Unsound(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 invalid input, 3 resource budget, 4 soundness failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Format { .. } | CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Unsound(_) => 4,
        }
    }

    /// Short machine-readable tag for the error report.
    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "invalid-input",
            3 => "budget",
            _ => "soundness",
        }
    }
}
