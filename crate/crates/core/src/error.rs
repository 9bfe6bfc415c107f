use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("operands belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("element is not a unit (degree-0 component is not 1)")]
    NotAUnit,

    #[error("rewrite system is not confluent at monomial {0}")]
    NotConfluent(String),

    #[error("rewrite system does not terminate from monomial {0}")]
    NotTerminating(String),

    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),
}
