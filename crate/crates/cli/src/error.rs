use std::path::PathBuf;

use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INADMISSIBLE: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] kirkwood::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Csv(_) => EXIT_IO,
        }
    }

    /// The `{code, message, context}` record written to standard error.
    pub fn to_json(&self, subcommand: Option<&str>) -> Value {
        let mut context = json!({ "subcommand": subcommand });
        match self {
            CliError::Usage(_) => context["kind"] = "usage".into(),
            CliError::Numerical(e) => {
                context["kind"] = "numerical".into();
                context["detail"] = format!("{e:?}").into();
            }
            CliError::Io { path, .. } | CliError::Parse { path, .. } => {
                context["kind"] = "io".into();
                context["path"] = path.display().to_string().into();
            }
            CliError::Csv(_) => context["kind"] = "io".into(),
        }
        json!({ "code": self.code(), "message": self.to_string(), "context": context })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
