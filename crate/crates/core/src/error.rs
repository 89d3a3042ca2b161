use thiserror::Error;

use crate::polyring::Polynomial;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    RingMismatch(usize, usize),

    #[error("{0} variables requested, at most {max} supported", max = crate::polyring::MAX_VARS)]
    TooManyVariables(usize),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("division is not exact; remainder {0}")]
    NotDivisible(Box<Polynomial>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: String, rank: usize },

    #[error("invalid simple root subset: {0}")]
    InvalidTheta(String),

    #[error("integrand has degree {found:?}, expected homogeneous degree {expected}")]
    DegreeMismatch { expected: u32, found: Option<u32> },

    #[error("integrand is not invariant under the reflection in simple root {0}")]
    NotInvariant(usize),

    #[error("{0} isotropy summands is too many to enumerate")]
    TooManySummands(usize),

    #[error("sign vector has {found} entries, flag has {expected} summands")]
    SignLength { expected: usize, found: usize },

    #[error("no Borel presentation for {0}")]
    NoPresentation(String),

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
