//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simplex vertices are affinely dependent (singular barycentric system)")]
    AffinelyDependent,

    #[error("empty interval: lo {lo} > hi {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("degenerate interval [{at}, {at}] (set \"allow_degenerate\" to permit)")]
    DegenerateInterval { at: String },

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,

    #[error("not Ehrhart-consistent: {0}")]
    NotEhrhartConsistent(String),

    #[error("not a lattice-polytope Ehrhart polynomial: delta entry {index} is not an integer")]
    NonIntegerDelta { index: usize },

    #[error("counting budget exceeded: {needed} candidate points > limit {limit}")]
    BudgetExceeded { needed: u128, limit: u64 },

    #[error("spec parse error: {0}")]
    ParseSpec(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
