use thiserror::Error;

use crate::pointset::PointSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point count {0} is outside the supported range 1..=16")]
    SizeOutOfRange(usize),

    #[error("topology axiom violated: {0}")]
    AxiomViolation(String),

    #[error("subspace carrier is empty")]
    EmptyCarrier,

    #[error("point counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("list of spaces is empty")]
    EmptyList,

    #[error("family of sets is empty")]
    EmptyFamily,

    #[error("{what} is limited to {limit} points (got {n})")]
    SizeGuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("set {0} is not closed")]
    NotClosed(PointSet),

    #[error("sets {0} and {1} are not disjoint")]
    NotDisjoint(PointSet, PointSet),

    #[error("no family of size at most {max_k} found, and no certificate of infinity exists")]
    BoundExhausted { max_k: usize },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("unknown dimension function `{0}`")]
    UnknownDimension(String),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
