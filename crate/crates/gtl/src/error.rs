use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown token at byte {pos}: {found:?}")]
    UnknownToken { pos: usize, found: String },
    #[error("negative translation is only defined on the classical fragment (found co-implication)")]
    CoImpliesNotClassical,
    #[error("formula is outside the classical fragment: {0}")]
    NotClassical(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("sigma has {size} formulas, above the cap of {cap}")]
    SigmaTooLarge { size: usize, cap: usize },
    #[error("index {index} out of range for sigma of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid model: {0}")]
    Model(String),
    #[error("invalid system: {0}")]
    System(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("invalid proof file: {0}")]
    Proof(String),
    #[error("invalid witness file: {0}")]
    Witness(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
