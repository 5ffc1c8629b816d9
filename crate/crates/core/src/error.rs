use thiserror::Error;

/// Errors raised by graph construction, solving and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported size: {what} is {actual}, limit is {limit}")]
    UnsupportedSize {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// The branch-and-bound search hit its node limit before proving optimality.
    #[error(
        "node limit of {node_limit} exceeded; best bounds found: {lower_bound} <= gamma <= {upper_bound}"
    )]
    ResourceLimit {
        node_limit: u64,
        lower_bound: usize,
        upper_bound: usize,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A construction or checker was handed an instance outside its hypothesis.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A construction produced a set that does not meet its own contract.
    /// Seeing this means the implementation is wrong, not the input.
    #[error("construction {theorem} produced an invalid witness: {message}")]
    InvalidWitness { theorem: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
