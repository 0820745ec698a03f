use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} on {order} vertices exceeds the bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        order: usize,
        bound: usize,
    },

    #[error("invalid orientation word: {0}")]
    InvalidPattern(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn witness(msg: impl Into<String>) -> Self {
        Error::InvalidWitness(msg.into())
    }

    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
