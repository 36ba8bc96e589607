//! Crate-wide error type.
//!
//! Variants group into four diagnostic classes surfaced by callers: parse,
//! I/O, validation and alignment. The `Display` form of every variant is a
//! single line carrying its class.

use thiserror::Error;

/// Errors produced by training, segmentation, interchange and statistics.
#[derive(Debug, Error)]
pub enum Error {
    /// A token contained the reserved end-of-word marker as literal text.
    #[error("validation error: token {token:?} contains the reserved end-of-word marker")]
    ReservedMarker {
        /// The offending token.
        token: String,
    },

    /// Merge selection was requested on an empty pair-count table.
    #[error("validation error: no symbol pairs available for selection")]
    NoPairsAvailable,

    /// A line of an input file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// 1-based line number.
        line: u64,
        /// What went wrong on that line.
        message: String,
    },

    /// A merge rule references a symbol that no earlier rule (and no single
    /// character) can produce.
    #[error("validation error: rule at rank {rank} uses symbol {symbol:?} not constructible from characters or earlier merges")]
    Unconstructible {
        /// Rank of the offending rule.
        rank: usize,
        /// The symbol that cannot be built.
        symbol: String,
    },

    /// Generic validation failure.
    #[error("validation error: {0}")]
    Validation(String),

    /// Two line-aligned streams disagreed in length.
    #[error("alignment error at line {line}: {message}")]
    Alignment {
        /// 1-based line number at which the streams diverged.
        line: u64,
        /// Which stream ended early.
        message: String,
    },

    /// Two segmentation reports do not describe the same original stream.
    #[error(
        "validation error: reports cover different originals ({left} vs {right} original tokens)"
    )]
    Incomparable {
        /// Original token count of the left report.
        left: u64,
        /// Original token count of the right report.
        right: u64,
    },

    /// Underlying I/O failure.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
