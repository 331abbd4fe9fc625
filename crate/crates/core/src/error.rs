//! Crate error type.

use thiserror::Error;

/// Errors reported by the fallible operations of this crate.
///
/// Most of the symbolic operations are total and return values directly;
/// the variants below cover violated argument preconditions, the one
/// internal consistency assertion that is surfaced as an error, and the
/// failure modes of the floating-point oracles.
#[derive(Debug, Error)]
pub enum Error {
    /// The order k of the distribution must be at least 1.
    #[error("order k must be >= 1")]
    ZeroOrder,

    /// λ must be nonnegative for mean/variance and positive for samplers.
    #[error("lambda must be {requirement}, got {value}")]
    LambdaOutOfRange {
        requirement: &'static str,
        value: String,
    },

    /// The inversion sampler is only exact and fast for moderate rates.
    #[error("lambda = {lambda} not supported by the inversion sampler (max {max})")]
    LambdaTooLarge { lambda: f64, max: f64 },

    /// Requested coefficient power has no closed form, or (n, k) lies
    /// outside the validity range of the closed form for that power.
    #[error("no closed form for coefficient of lambda^{power} in M_({n}): {reason}")]
    UnsupportedCoefficient {
        n: u32,
        power: i64,
        reason: &'static str,
    },

    /// Relative tolerance for the numeric oracle must lie in (0, 1).
    #[error("relative tolerance must lie in (0, 1), got {0}")]
    BadTolerance(f64),

    /// The numeric series did not reach its certified tail bound within
    /// the hard cap on the number of terms.
    #[error("series tail bound not reached within {cap} terms")]
    TruncationFailure { cap: u64 },

    /// `exp` of a truncated series requires a zero constant term.
    #[error("series exp requires a zero constant term, got {0}")]
    NonzeroConstantTerm(String),

    /// An exact-arithmetic identity that must hold by construction failed;
    /// indicates a bug, never expected in normal operation.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
