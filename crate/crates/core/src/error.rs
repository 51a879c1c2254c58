use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("presentation is not connected")]
    Disconnected,
    #[error("invalid vertex {0}")]
    InvalidVertex(String),
    #[error("set does not belong to this presentation: {0}")]
    MismatchedPresentation(String),
    #[error("expected a finite vertex set")]
    InfiniteSet,
    #[error("star-comb search needs an infinite vertex set")]
    FiniteSet,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("not an end of this presentation")]
    UnknownEnd,
    #[error("nothing to attach: the neighbourhood of the component is finite")]
    FiniteAttachment,
    #[error("not a component of the complement: {0}")]
    NotAComponent(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("horizon {given} too small, need at least {required}")]
    HorizonTooSmall { given: usize, required: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
