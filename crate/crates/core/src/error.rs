//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors produced by construction, series expansion, caching, and
/// high-precision evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A partition was constructed with a part equal to zero.
    #[error("partition parts must be positive; got a zero part")]
    ZeroPart,

    /// A custom weight sequence does not define w(k) for some k needed by the
    /// requested expansion degree.
    #[error("weight sequence defines w(k) only for k <= {defined}, but expansion to degree {requested} needs w({missing})")]
    WeightUndefined {
        /// Largest k for which a weight is defined.
        defined: usize,
        /// Smallest k that is needed but missing.
        missing: usize,
        /// Requested expansion degree.
        requested: usize,
    },

    /// An argument was outside an operation's documented domain.
    #[error("invalid request: {reason}")]
    InvalidRequest {
        /// Human-readable description of the violated precondition.
        reason: String,
    },

    /// A cache file could not be parsed as a coefficient-series file.
    #[error("malformed cache file {}: {reason}", path.display())]
    MalformedCache {
        /// File that failed to parse.
        path: PathBuf,
        /// What was wrong with it.
        reason: String,
    },

    /// A cache file is valid but stores fewer coefficients than requested.
    #[error("stale cache file {}: stores n_max={stored}, requested n_max={requested}", path.display())]
    StaleCache {
        /// File that was too short.
        path: PathBuf,
        /// Degree stored in the file.
        stored: usize,
        /// Degree that was requested.
        requested: usize,
    },

    /// An underlying filesystem operation failed.
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        /// Path involved in the failed operation.
        path: PathBuf,
        /// The underlying error.
        #[source]
        source: std::io::Error,
    },

    /// The requested decimal accuracy exceeds what the configured working
    /// precision can guarantee.
    #[error("requested {digits} decimal digits, but {bits} working bits guarantee at most {capacity}")]
    PrecisionInfeasible {
        /// Requested decimal digits.
        digits: u32,
        /// Configured binary working precision.
        bits: usize,
        /// Decimal digits the working precision can actually deliver.
        capacity: u32,
    },

    /// The imaginary part of a root-of-unity filtered sum failed to cancel.
    /// The two complex-conjugate summands must cancel to rounding error, so
    /// this signals an implementation bug rather than a data problem.
    #[error("non-real constant for ell={ell}, n0={n0}: |Im| = {imag} exceeds tolerance {tolerance}")]
    NonRealConstant {
        /// Weight exponent of the failing evaluation.
        ell: u32,
        /// Residue-class label of the failing evaluation.
        n0: u32,
        /// Magnitude of the residual imaginary part, rendered in decimal.
        imag: String,
        /// Tolerance it was compared against.
        tolerance: String,
    },

    /// Adaptive truncation failed to stabilize within the doubling budget.
    #[error("truncation for ell={ell}, n0={n0} did not stabilize by K={reached}")]
    TruncationStalled {
        /// Weight exponent of the failing evaluation.
        ell: u32,
        /// Residue-class label of the failing evaluation.
        n0: u32,
        /// Largest truncation index tried.
        reached: usize,
    },
}
