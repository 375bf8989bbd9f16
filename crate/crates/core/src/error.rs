use thiserror::Error;

use crate::lattice::Group;

/// Errors raised by the geometry, lattice and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined at the identity")]
    OriginRejected,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group mismatch: {left:?} vs {right:?}")]
    GroupMismatch { left: Group, right: Group },

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("coordinate overflow; last completed radius {last_radius}")]
    EnumerationOverflow { last_radius: u32 },

    /// Enumeration stopped because the next layer would not fit; the census
    /// up to `last_radius` is complete.
    #[error("state budget of {budget} exceeded; last completed radius {last_radius}")]
    MemoryBudget { budget: usize, last_radius: u32 },

    /// A distance query needed more than `budget` steps.
    #[error("distance exceeds budget {budget}")]
    DistanceBudget { budget: u32 },

    #[error("unknown generating set label `{0}`")]
    UnknownLabel(String),

    #[error("generating set `{0}` is not split across direct factors")]
    NotSplit(String),

    #[error("generating set is not symmetric: inverse of {0} missing")]
    NotSymmetric(String),

    #[error("projected generating set spans only {rank} of {dim} dimensions")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
