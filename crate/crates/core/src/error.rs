use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("point is not in the polyhedron")]
    NotInPolyhedron,
    #[error("polyhedron is not pointed")]
    NotPointed,
    #[error("direction is an unbounded ray")]
    UnboundedRay,
    #[error("step is blocked: a tight row has positive slope")]
    Blocked,
    #[error("matrix is singular")]
    Singular,
    #[error("unknown row label {0:?}")]
    UnknownLabel(String),
    #[error("row {0:?} does not define a facet")]
    NotFacet(String),
    #[error("objective ties on edge {0}-{1}")]
    NotGeneric(usize, usize),
    #[error("digraph has {0} sinks")]
    MultipleSinks(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("at most {max} inequality rows are supported, got {found}")]
    TooManyRows { max: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
