use thiserror::Error;

/// Errors produced by the Gabor analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaborError {
    #[error("{name} must be positive")]
    NonPositive { name: &'static str },

    #[error("{what} ({divisor}) does not divide the signal length {len}")]
    Divisibility {
        what: &'static str,
        divisor: usize,
        len: usize,
    },

    #[error("{what} index {index} out of range 0..{bound}")]
    Index {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    Dimension {
        what: &'static str,
        expected: String,
        actual: String,
    },

    #[error("lattice density {a}/{m} exceeds 1; no dual window exists")]
    UnsupportedLattice { a: usize, m: usize },

    #[error("constraint system is rank deficient (rank {rank} of {rows} rows)")]
    SingularSystem { rank: usize, rows: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("windows are not a dual pair (Wexler-Raz residual {residual:e})")]
    InvalidPair { residual: f64 },

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("mask value {value} at position {index} outside [0, 1]")]
    MaskRange { index: usize, value: f64 },

    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = std::result::Result<T, GaborError>;
