//! Error classification and the exit-code contract.
//!
//! Exit codes are part of the CLI's API; every error class maps to
//! exactly one code so shell pipelines can branch on them:
//!
//! | code | meaning                                                   |
//! |------|-----------------------------------------------------------|
//! | 0    | success (and "similar" for `similarity check`)            |
//! | 1    | I/O failure (unreadable input, unwritable output)         |
//! | 2    | malformed file or argument (message names the field)      |
//! | 3    | dimensionally dependent basis (zero determinant)          |
//! | 4    | inconsistent system, missing parameter, or unsolvable     |
//! | 5    | cases are not similar                                     |

use simcrit::{PiError, SimilarityError};

pub const EXIT_IO: u8 = 1;
pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_SINGULAR: u8 = 3;
pub const EXIT_INCONSISTENT: u8 = 4;
pub const EXIT_NOT_SIMILAR: u8 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    SingularBasis(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        CliError::Schema(message.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::SingularBasis(_) => EXIT_SINGULAR,
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

impl From<PiError> for CliError {
    fn from(err: PiError) -> Self {
        match err {
            PiError::SingularBasis => CliError::SingularBasis(err.to_string()),
            PiError::InconsistentSystem(_) => CliError::Inconsistent(err.to_string()),
            // shape and symbol problems are input problems
            _ => CliError::Schema(err.to_string()),
        }
    }
}

impl From<SimilarityError> for CliError {
    fn from(err: SimilarityError) -> Self {
        CliError::Inconsistent(err.to_string())
    }
}
