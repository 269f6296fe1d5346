use thiserror::Error;

/// Every failure the library can report. Variants carry a human-readable
/// description of the offending values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole at point: {0}")]
    PoleAtPoint(String),
    #[error("divergent limit: {0}")]
    DivergentLimit(String),
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("size error: {0}")]
    SizeError(String),
    #[error("duplicate rapidity: {0}")]
    DuplicateRapidity(String),
    #[error("malformed lattice spec: {0}")]
    MalformedSpec(String),
    #[error("missing constant: no table entry for {0}")]
    MissingConstant(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable variant name, used in CLI reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleAtPoint(_) => "PoleAtPoint",
            Error::DivergentLimit(_) => "DivergentLimit",
            Error::NotSquare { .. } => "NotSquare",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::SizeError(_) => "SizeError",
            Error::DuplicateRapidity(_) => "DuplicateRapidity",
            Error::MalformedSpec(_) => "MalformedSpec",
            Error::MissingConstant(_) => "MissingConstant",
            Error::NoConvergence(_) => "NoConvergence",
            Error::Parse(_) => "Parse",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
