use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(corrgauss::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 usage, 3 non-physical point, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<corrgauss::Error> for CliError {
    fn from(e: corrgauss::Error) -> Self {
        match e {
            corrgauss::Error::InvalidParameter { .. } | corrgauss::Error::InvalidScan(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Domain(other),
        }
    }
}
