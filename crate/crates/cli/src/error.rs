use std::path::PathBuf;

use solow_energy::Error as ModelError;

/// Failure of a command, classified by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, bad config, unreadable inputs. Exit status 1.
    #[error("{0}")]
    Usage(String),

    /// The model or a numerical kernel failed on valid input. Exit status 2.
    #[error("{0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            ModelError::InvalidParameter { .. }
            | ModelError::Domain { .. }
            | ModelError::WrongVariant { .. }
            | ModelError::DegenerateRates(_)
            | ModelError::InsufficientData { .. }
            | ModelError::Parse { .. }
            | ModelError::DataDomain { .. }
            | ModelError::MissingColumn { .. }
            | ModelError::Io { .. } => CliError::Usage(err.to_string()),
            ModelError::Divergence { .. } | ModelError::Singular(_) | ModelError::Numerics(_) => {
                CliError::Numerical(err.to_string())
            }
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Usage(format!("writing CSV: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
