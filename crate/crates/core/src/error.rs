use alloc::boxed::Box;
use alloc::string::String;

use crate::engine::GapReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Sign or floor could not be decided within the precision budget.
    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("invalid alpha: {0}")]
    InvalidAlpha(String),

    #[error(transparent)]
    Config(#[from] ConfigError),

    /// More distinct gaps than the proven bound. Always an implementation bug.
    #[error("theorem violation: {distinct} distinct gaps exceed bound {bound}")]
    TheoremViolation {
        distinct: usize,
        bound: usize,
        report: Option<Box<GapReport>>,
    },

    /// A runtime-checked premise of the construction failed.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("classification inconsistency at gap interval {interval}: {detail}")]
    ClassificationInconsistency { interval: usize, detail: String },

    #[error("piece {piece} has zero slope but contains sample points")]
    ZeroSlopePiece { piece: usize },

    #[error("sample point {m}*alpha hits breakpoint {breakpoint}")]
    BreakpointHit { m: u64, breakpoint: usize },

    #[error("invalid piecewise-linear function: {0}")]
    InvalidPwl(String),
}

/// Validation failures for a gap configuration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("zero slope in sequence {index}")]
    ZeroSlope { index: usize },
    #[error("λ must be a positive integer multiple of Pq")]
    LambdaNotMultiple,
    #[error("sequence {index}: n = {n} exceeds N = {big_n}")]
    RangeInverted { index: usize, n: u64, big_n: u64 },
    #[error("no sequences")]
    NoSequences,
    #[error("total point count N is zero")]
    EmptyConfig,
    #[error("P must be positive")]
    NonPositiveModulus,
    #[error("q must be positive")]
    NonPositiveDenominator,
    #[error("infinite λ requires the prime fractional-part variant")]
    InfiniteLambdaRequiresPrime,
    #[error("{0}")]
    Other(String),
}
