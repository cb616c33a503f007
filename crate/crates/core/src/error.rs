use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("polytope is not reflexive")]
    NotReflexive,

    /// `part` and `vertex` are zero-based indices into the input parts and
    /// the lexicographically sorted vertices of the dual polytope.
    #[error("not a nef-partition: phi_{part}(e_{vertex}) = {value}, expected 0 or 1")]
    NotNef { part: usize, vertex: usize, value: String },

    #[error("point is not on the boundary: {0}")]
    NotOnBoundary(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }
}
