use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Malformed file contents.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic number, expected {0}")]
    Magic(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("expected {expected} data bytes, found {actual}")]
    DataLength { expected: usize, actual: usize },
    #[error("sample {0} exceeds maxval")]
    SampleAboveMaxval(usize),
    #[error("unknown connectivity id {0}")]
    ConnectivityId(u32),
    #[error("invalid arrow field: {0}")]
    Arrows(steepwater::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

/// Failure of one CLI invocation. Each variant maps to its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{0} (expected square4, square8 or hex6)")]
    Connectivity(#[from] steepwater::connectivity::UnknownConnectivity),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub const EXIT_IO: i32 = 3;
    pub const EXIT_FORMAT: i32 = 4;
    pub const EXIT_CONNECTIVITY: i32 = 5;
    pub const EXIT_INVALID: i32 = 6;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => Self::EXIT_IO,
            CliError::Format { .. } => Self::EXIT_FORMAT,
            CliError::Connectivity(_) => Self::EXIT_CONNECTIVITY,
            CliError::Invalid(_) => Self::EXIT_INVALID,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, source: FormatError) -> Self {
        CliError::Format {
            path: path.into(),
            source,
        }
    }
}

impl From<steepwater::Error> for CliError {
    fn from(e: steepwater::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}
