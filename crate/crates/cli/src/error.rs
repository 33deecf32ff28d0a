use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: pbpoly::Error },

    #[error("{0}")]
    Core(#[from] pbpoly::Error),

    #[error("{0}")]
    Usage(String),

    #[error("no elimination order with {0}")]
    NoOrder(String),

    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 0 success, 1 verification failure, 2 usage or input, 3 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::NoOrder(_) => 3,
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Input { source, .. } | CliError::Core(source) => match source {
                pbpoly::Error::SizeLimit { .. } => 3,
                pbpoly::Error::Infeasible | pbpoly::Error::Unbounded => 1,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
