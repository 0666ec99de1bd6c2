use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Math(#[from] frobex_core::Error),
}

impl CliError {
    /// 0 success, 1 usage or input error, 2 mathematical precondition.
    pub fn exit_code(&self) -> i32 {
        use frobex_core::Error as E;
        match self {
            CliError::Syntax { .. } | CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Math(E::Parse { .. } | E::NotPrime(_) | E::InvalidRing(_)) => 1,
            CliError::Math(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
