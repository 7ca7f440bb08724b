use thiserror::Error;

/// Errors raised by graph, representation and recognition operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has {n} vertices, over the bound of {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("graph has twins: {0:?}")]
    HasTwins(Vec<Vec<String>>),
    #[error("graph is not an interval graph")]
    NotInterval,
    #[error("representation is not strict")]
    NotStrict,
    #[error("representation covers {found} vertices but the graph has {expected}")]
    CoverMismatch { expected: usize, found: usize },
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("invalid representation JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
