//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by matrix construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed exponent-matrix text, reported with the 1-based line number.
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Matrix dimensions or circulant size below 1.
    #[error("matrix dimensions must be positive, got {rows}x{cols} with circulant size {circulant_size}")]
    BadDimensions {
        rows: usize,
        cols: usize,
        circulant_size: i64,
    },

    /// An exponent entry outside `{-1, ..., L-1}`.
    #[error("entry {value} at ({row},{col}) out of range [-1, {}]", circulant_size - 1)]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        circulant_size: i64,
    },

    /// Circulant size below 1.
    #[error("circulant size must be at least 1, got {0}")]
    BadCirculantSize(i64),

    /// An exponent chain must have even length at least 4.
    #[error("exponent chain must have even length >= 4, got {len}")]
    BadChainLength { len: usize },

    /// Cycle-length caps must be even and at least 4.
    #[error("cycle length cap must be even and >= 4, got {cap}")]
    BadLengthCap { cap: usize },

    /// Lift target outside `1..=L0`.
    #[error("target circulant size {target} must be in 1..={base}")]
    BadTargetSize { target: i64, base: i64 },

    /// Scale value outside `0 < r < L0`.
    #[error("scale value {scale} must satisfy 0 < r < {base}")]
    BadScale { scale: i64, base: i64 },

    /// No scale candidate exists (base circulant size below 2).
    #[error("no scale candidates exist for base circulant size {base}")]
    NoScaleCandidates { base: i64 },

    /// The probabilistic model requires `q > 2`.
    #[error("q must be greater than 2, got {q}")]
    BadQ { q: i64 },

    /// Scale-family size must be at least 1 and satisfy `N_r * p_fl <= 1`.
    #[error("scale-family size {n_r} is not usable for q = {q}")]
    BadFamilySize { n_r: usize, q: i64 },

    /// Monte Carlo needs at least one trial.
    #[error("trial count must be at least 1")]
    NoTrials,

    /// Exact model enumeration would exceed the outcome budget.
    #[error("model enumeration needs {needed} outcomes, above the budget of {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
