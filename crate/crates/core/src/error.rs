//! Error type shared across the laboratory.
//!
//! Variants are grouped by how a caller should react: configuration problems,
//! violated preconditions / guards, degenerate geometry, and fit refusals.
//! The CLI maps these onto exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed configuration or invalid constructor arguments.
    #[error("config error: {0}")]
    Config(String),

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Degenerate geometry (vanishing gradient, rank-deficient system, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A resolution guard fired: the requested accuracy needs more samples
    /// than the caller allowed.
    #[error("resolution guard: need {required} samples but limit is {allowed} ({context})")]
    ResolutionGuard {
        required: usize,
        allowed: usize,
        context: String,
    },

    /// Mode-count overflow in a spectral product; advise truncation.
    #[error(
        "mode overflow: product would have {modes} terms (cap {cap}); truncate the inputs first"
    )]
    ModeOverflow { modes: usize, cap: usize },

    /// A power-law fit was refused (too few usable points, all below noise).
    #[error("fit refused: {0}")]
    FitRefused(String),

    /// A required table entry was missing.
    #[error("missing entry: {0}")]
    MissingEntry(String),

    /// Numerical failure inside an iterative routine.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
