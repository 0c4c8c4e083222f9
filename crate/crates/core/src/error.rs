use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exact predicates are not available for the numeric L^p norm")]
    UnsupportedExactNorm,

    #[error("invalid polygonal unit ball: {0}")]
    InvalidPolygon(String),

    #[error("configuration contains the point at index {second} twice (first at {first})")]
    DuplicatePoint { first: usize, second: usize },

    #[error("ordering is not line-like")]
    NotLineLike,

    #[error("norm is strictly convex: its unit circle contains no segment")]
    StrictlyConvexNorm,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("checkpoint format error: {0}")]
    CheckpointFormat(String),

    #[error("point {0} is not on the lattice")]
    NotOnLattice(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
