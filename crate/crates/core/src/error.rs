use thiserror::Error;

use crate::model::Id;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown id `{0}`")]
    UnknownId(Id),
    #[error("`{0}` is not a saddle point")]
    NotASaddle(Id),
    #[error("`{0}` is not a point singularity")]
    NotAPoint(Id),
    #[error("set is not invariant-closed: closure of `{0}` leaves the set")]
    NotInvariantClosed(Id),
    #[error("saddle set `{name}` rejected: {reason}")]
    InvalidSaddleSet { name: String, reason: SaddleSetFailure },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownFixture(String),
    #[error("bad parameter for `{fixture}`: {detail}")]
    BadParam { fixture: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaddleSetFailure {
    #[error("closure of `{0}` leaves the set")]
    NotInvariantClosed(Id),
    #[error("no orbit grazes the set and leaves it in both time directions")]
    NotASaddleSet,
    #[error("minimal sets accumulate on it (schema `{0}`)")]
    NotIsolated(Id),
    #[error("unknown id `{0}`")]
    UnknownId(Id),
}
