//! Error type shared by the whole crate.
//!
//! Witness values are carried as `f64` regardless of the working scalar so
//! the error enum stays non-generic.

use thiserror::Error;

/// Errors raised by model construction, evaluation and the solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("invalid model parameter: {0}")]
    InvalidModel(String),

    #[error("tabulated query at {query} outside hull [{lo}, {hi}] without tail exponent")]
    OutsideTableHull { query: f64, lo: f64, hi: f64 },

    #[error("suffix supremum of g(t)/t^(p-1) is unbounded: growth condition at infinity violated")]
    UnboundedSuffixSupremum,

    #[error("supercritical absorption required: q must exceed p-1 (q={q}, p={p})")]
    SupercriticalRequired { q: f64, p: f64 },

    #[error("reaction exponent must satisfy m <= p-1 (m={m}, p={p})")]
    ReactionExponentTooLarge { m: f64, p: f64 },

    #[error("failed to bracket root: h({lo}) = {h_lo}, h({hi}) = {h_hi}")]
    BracketFailure { lo: f64, hi: f64, h_lo: f64, h_hi: f64 },

    #[error("sub-solution construction fails: phi(M) <= 0 for all sampled M")]
    SubSolutionFails,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("blow-up of iterate: non-finite residual in nonlinear solve")]
    IterateBlowUp,

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("refine grid or raise L: rate-fit window has {found} points, need at least {need}")]
    FitWindowTooSmall { found: usize, need: usize },

    #[error("reaction strength {lambda} is not below the admissible threshold {lambda_star}")]
    LambdaAboveThreshold { lambda: f64, lambda_star: f64 },

    #[error("ladder monotonicity violated at rung {rung}: min(u_next - u_prev) = {slack}")]
    MonotonicityViolation { rung: usize, slack: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
