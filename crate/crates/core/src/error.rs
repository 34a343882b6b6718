use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank error: {0}")]
    Rank(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{what} exceeds the supported cap of {cap}")]
    Cap { what: String, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word reduces to the identity")]
    TrivialWord,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("vector is not a unit vector (norm {0})")]
    Norm(f64),
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
