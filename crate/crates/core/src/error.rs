use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed cycle notation at byte {at}: {reason}")]
    MalformedCycles { at: usize, reason: String },

    #[error("point {point} repeated within one cycle")]
    RepeatedPoint { point: usize },

    #[error("{n} is not prime")]
    NotPrime { n: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element does not belong to the ambient group")]
    NotAnElement,

    #[error("not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{what} cap exceeded: needed {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("group order overflows u64")]
    OrderOverflow,

    #[error("semidirect action is invalid: {0}")]
    InvalidAction(String),

    #[error("parse error at line {line}: {reason}")]
    FileFormat { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
