//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating inputs or solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("matrix of {rows}x{cols} needs {} entries, got {len}", rows * cols)]
    EntryCountMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("{context} must be finite")]
    NonFinite { context: &'static str },

    #[error("{context}: expected length {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("singular or indefinite system: non-positive pivot at index {pivot}")]
    SingularSystem { pivot: usize },

    #[error("discount rate must be non-negative, got {alpha}")]
    NegativeRate { alpha: f64 },

    #[error("operation requires a strictly positive discount rate, got {alpha}")]
    NonPositiveRate { alpha: f64 },

    #[error("discount rate {alpha} outside supported range (0, {max}]")]
    RateOutOfRange { alpha: f64, max: f64 },

    #[error("time must be non-negative, got {time}")]
    NegativeTime { time: f64 },

    #[error("invalid interval: start {start} must satisfy 0 <= start < end, end {end}")]
    InvalidInterval { start: f64, end: f64 },

    #[error("cost profile needs at least 2 samples, got {got}")]
    TooFewSamples { got: usize },

    #[error("cost profile sample times must be strictly increasing at index {index}")]
    UnorderedSamples { index: usize },

    #[error("cost profile sample {index} lies outside [0, duration]")]
    SampleOutOfRange { index: usize },

    #[error("build duration must be non-negative, got {years}")]
    NegativeBuildTime { years: f64 },

    #[error("total cost must be non-negative, got {cost}")]
    NegativeCost { cost: f64 },

    #[error("horizon must be positive, got {horizon}")]
    NonPositiveHorizon { horizon: f64 },

    #[error("cash flow at time {time} lies beyond the horizon {horizon}")]
    BeyondHorizon { time: f64, horizon: f64 },

    #[error("underdetermined system: {observations} observations for {predictors} predictors")]
    Underdetermined {
        observations: usize,
        predictors: usize,
    },

    #[error("need at least {need} records, got {got}")]
    TooFewRecords { got: usize, need: usize },

    #[error("ridge strength must be non-negative, got {lambda}")]
    NegativeLambda { lambda: f64 },

    #[error("coefficient of determination is undefined: all targets are identical")]
    ZeroTargetVariance,

    #[error("importance weight must be non-negative, got {value}")]
    NegativeWeight { value: f64 },
}
