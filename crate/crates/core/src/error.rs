use alloc::string::String;

/// Every fallible operation in the crate returns this error.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("position error: {0}")]
    Position(String),
    #[error("type mismatch at slice {slice}: {msg}")]
    TypeMismatch { slice: usize, msg: String },
    #[error("unknown basis id: {0}")]
    UnknownBasisId(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("singular pairing: {0}")]
    SingularPairing(String),
    #[error("category `{0}` is not modular")]
    NotModular(String),
}

pub type Result<T> = core::result::Result<T, Error>;
