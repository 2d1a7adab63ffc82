use std::path::PathBuf;

/// Process exit status: 0 pass, 1 verification failure, 2 configuration or domain error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    Fail = 1,
    Error = 2,
}

impl ExitStatus {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            ExitStatus::Pass
        } else {
            ExitStatus::Fail
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] zmc_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl ForgeError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ForgeError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, ForgeError>;
