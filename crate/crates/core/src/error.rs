use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variety `{0}` (supported: P3, X2, X4, X5)")]
    UnknownVariety(String),
    #[error("integrality violated: {0}")]
    Integrality(String),
    #[error("domain rejection: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse failures are the caller's fault; everything else is a rejection
    /// of a well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::UnknownVariety(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
