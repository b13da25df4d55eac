use thiserror::Error;

/// Failures that stop a command before it can produce a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("search refused: {0}")]
    Scale(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for usage and parse errors, 3 for scale refusals.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Scale(_) => 3,
            _ => 2,
        }
    }
}

impl From<pgcaps::Error> for CliError {
    fn from(e: pgcaps::Error) -> Self {
        match e {
            pgcaps::Error::ScaleRefused(msg) => CliError::Scale(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
