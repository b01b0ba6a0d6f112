use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("raw credit must be a finite positive number, got {0}")]
    InvalidCredit(f64),

    #[error("normalized credit {0} is outside [0, 100]")]
    CreditOutOfRange(f64),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("unknown island {0}")]
    UnknownIsland(usize),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid repertoire: {0}")]
    InvalidRepertoire(String),

    #[error("invalid phase schedule: {0}")]
    InvalidSchedule(String),

    #[error("island {island} failed on episode {episode}: {reason}")]
    Domain {
        island: usize,
        episode: usize,
        reason: String,
    },

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

impl CoreError {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
