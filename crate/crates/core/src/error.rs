use alloc::string::String;

use crate::{ExtReal, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid point {0} for this space")]
    InvalidPoint(Point),
    #[error("precondition failed: {reason}")]
    PreconditionFailed { reason: String, witness: Option<Point> },
    #[error("universe of size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("map has no preimage")]
    MissingPreimage,
    #[error("displacement stays bounded (max observed {max_observed}) over the probed indices")]
    BoundedDisplacement { max_observed: ExtReal },
    #[error("search budget of {nodes} nodes exhausted")]
    BudgetExhausted { nodes: u64 },
    #[error("certificate failed at scale {scale}: {check}")]
    CertificateFailed { scale: Rational, check: String },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn unsupported(msg: &str) -> Error {
    Error::UnsupportedModel(String::from(msg))
}

pub(crate) fn invalid(msg: &str) -> Error {
    Error::InvalidParams(String::from(msg))
}
