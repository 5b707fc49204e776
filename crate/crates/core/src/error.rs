use thiserror::Error;

use crate::sullivan::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid input: {0}")]
    Shape(String),

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("unknown catalog key `{0}`")]
    UnknownCatalogKey(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
