use thiserror::Error;

/// Crate-wide error type.
///
/// Variants map onto the CLI exit codes: parse/validation/insufficient-data
/// errors are data problems (exit 3), quadrature/optimizer/domain failures are
/// numerical problems (exit 4).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's domain (e.g. a non-positive shape).
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// An optimizer did not produce a usable minimum.
    #[error("optimizer failure: {0}")]
    Optimizer(String),

    /// Not enough data to carry out the requested computation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input data failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Exit code the CLI reports for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::InsufficientData(_)
            | Error::Io(_)
            | Error::Json(_) => 3,
            Error::Domain(_) | Error::Quadrature(_) | Error::Optimizer(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
