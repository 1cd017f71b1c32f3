use thiserror::Error;

/// Errors raised by the transform library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The parameter matrix is not a valid transform parameter.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Composition produced a matrix with `B = 0`, which has no integral kernel.
    #[error("degenerate composition: composed B = {0} (B must be nonzero)")]
    DegenerateComposition(f64),

    /// Input lies outside the domain of an operation (zero inverse, non-complex signal, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two signals or a signal and a grid do not line up.
    #[error("shape error: {0}")]
    Shape(String),

    /// A grid is malformed or violates the sampling contract.
    #[error("grid error: {0}")]
    Grid(String),

    /// A file could not be parsed.
    #[error("format error: {0}")]
    Format(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
