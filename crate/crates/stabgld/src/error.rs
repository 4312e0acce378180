use std::io;

use stabgld_core::Error as CoreError;

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const INVALID_STABILITY: i32 = 3;
    pub const UNSUPPORTED: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Input(String),
    /// Stability data that parses but violates the axioms.
    #[error("invalid stability data: {message}")]
    InvalidStability { message: String, violations: Vec<String> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl AppError {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Io { .. } | AppError::Json(_) | AppError::Csv(_) | AppError::Input(_) => exit::INPUT,
            AppError::InvalidStability { .. } => exit::INVALID_STABILITY,
            AppError::Unsupported(_) => exit::UNSUPPORTED,
            AppError::Core(e) => match e {
                CoreError::NotDynkin | CoreError::NotTypeA | CoreError::EigenvalueNotFound => exit::UNSUPPORTED,
                CoreError::InvalidChart(_)
                | CoreError::ChargeOutsideWindow(_)
                | CoreError::NotARoot(_)
                | CoreError::VanishingCharge(_)
                | CoreError::NotTotallyStable
                | CoreError::InvalidPolygon(_)
                | CoreError::PropagationInconsistency(_) => exit::INVALID_STABILITY,
                _ => exit::INPUT,
            },
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
