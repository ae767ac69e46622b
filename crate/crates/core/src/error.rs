use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("operator is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("scenario too large for vertex enumeration: {0} settings (limit 24)")]
    TooLarge(usize),
    #[error("value out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
