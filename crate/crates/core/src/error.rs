use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid universe (n={n}, m={m}, k={k}): need 1 <= k <= m <= n")]
    InvalidUniverse { n: usize, m: usize, k: usize },

    #[error("dimension mismatch: expected {expected} points, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {point} is outside X = {{0..{n}}}")]
    PointOutOfRange { point: usize, n: usize },

    #[error("cannot parse transformation literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("transformation {0} is not a member of the semigroup")]
    NotMember(String),

    #[error("transformation {0} is not a regular element")]
    NotRegular(String),

    #[error("the semigroup is regular, so no non-regular witness exists")]
    RegularSemigroup,

    #[error("stratum r={r} out of range 1..={k}")]
    StratumOutOfRange { r: usize, k: usize },

    #[error("operation requires Z ⊊ Y ⊊ X, got (n={n}, m={m}, k={k})")]
    WrongCase { n: usize, m: usize, k: usize },

    #[error("not a partition of X: {0}")]
    NotAPartition(String),

    #[error("semigroup has {size} elements, above the materialization bound {bound}")]
    TooLarge { size: String, bound: usize },

    #[error("max_n={max_n} exceeds the verification bound {bound}")]
    BoundExceeded { max_n: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
