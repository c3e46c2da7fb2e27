use std::path::PathBuf;

use juddian_core::boson::BosonError;
use juddian_core::juddian::JuddianError;
use juddian_core::rabi::RabiError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}: line {line}: {msg}", path.display())]
    Input { path: PathBuf, line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Juddian(#[from] JuddianError),
    #[error(transparent)]
    Rabi(#[from] RabiError),
    #[error(transparent)]
    Boson(#[from] BosonError),
}

impl CliError {
    /// Attaches a file path to a parse error.
    pub fn in_file(self, path: &std::path::Path) -> CliError {
        match self {
            CliError::Parse { line, msg } => CliError::Input {
                path: path.to_path_buf(),
                line,
                msg,
            },
            other => other,
        }
    }
}
