//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by enumeration, arithmetic and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Rectangle sides must be even, at least 2, and satisfy `L <= W`.
    #[error("invalid rectangle geometry: {0}")]
    InvalidGeometry(String),

    /// A state with the wrong slot count (or an otherwise malformed state)
    /// was handed to an elementary operation.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Elementary operations were applied out of order.
    #[error("illegal stage order: {0}")]
    IllegalStageOrder(String),

    /// The enumeration exceeded the configured maximum state count.
    #[error("resource limit exceeded: {states} states (cap {cap})")]
    ResourceCap { states: usize, cap: usize },

    /// The brute-force oracle refuses lattices above its vertex cap.
    #[error("oracle cap exceeded: {vertices} interior vertices (cap {cap})")]
    OracleCap { vertices: usize, cap: usize },

    /// A prime too large for overflow-free modular arithmetic was requested.
    #[error("prime {0} is not overflow-safe (must be below 2^31)")]
    UnsafePrime(u64),

    /// Residue tables disagree on reconstruction; either a pass is corrupt
    /// or the prime set is too small for the coefficients.
    #[error("inconsistent residues: {0}")]
    InconsistentResidues(String),

    /// Division by zero in exact evaluation.
    #[error("zero denominator in ratio evaluation")]
    ZeroDenominator,

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    QuadratureFailure { achieved: f64, requested: f64 },

    /// Root finding could not bracket or locate a solution.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// Sequence analysis preconditions violated (too few entries,
    /// sign changes, mixed aspect ratios, ...).
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    /// Numeric argument outside the documented domain.
    #[error("argument out of domain: {0}")]
    Domain(String),

    /// I/O and serialization failures.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input files.
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
