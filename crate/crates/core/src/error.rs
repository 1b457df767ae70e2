use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("algebra mismatch: operands belong to different algebras")]
    AlgebraMismatch,

    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),

    #[error("malformed lattice: {0}")]
    MalformedLattice(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("incompatible family: {0}")]
    Incompatible(String),

    #[error("bound exceeded: {what} is {value}, limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("point {point} out of range for a space with {points} points")]
    PointOutOfRange { point: usize, points: usize },

    #[error("ideal index {index} out of range for a lattice of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse scalar {input:?}: {reason}")]
    ParseScalar { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
