use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid walk parameters n={n}, k={k}: need k < n (and n >= 3, k >= 1 for a walk)")]
    InvalidCycle { n: usize, k: usize },

    #[error("{what}: n={n} exceeds the ceiling {ceiling} (override with {env})")]
    Ceiling {
        what: &'static str,
        n: usize,
        ceiling: usize,
        env: &'static str,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("tensor coefficient a(λ={lambda}, r={r}) is only defined for 1 <= r <= {max}")]
    OutOfRange { lambda: String, r: usize, max: usize },

    #[error("invalid box move: {0}")]
    InvalidMove(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internal cross-check failed (engine disagreement and similar).
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
