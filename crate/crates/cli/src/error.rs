use std::process::ExitCode;

/// Top-level command error, split by exit-code class: usage errors
/// (bad flags, unknown groups) exit 2, domain errors (bad data, failed
/// runs) exit 1.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] anyhow::Error),
}

impl AppError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AppError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Usage(_) => ExitCode::from(2),
            AppError::Domain(_) => ExitCode::from(1),
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
