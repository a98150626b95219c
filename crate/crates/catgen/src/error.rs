use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("stimulus must have at least one coordinate")]
    EmptyStimulus,

    #[error("non-finite value {value} at position {index}")]
    NonFiniteValue { index: usize, value: f64 },

    #[error("dimensionality mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("example set is empty")]
    EmptyExamples,

    #[error("probe list is empty")]
    EmptyProbes,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),

    #[error("learning rate must lie in [0, 1], got {0}")]
    InvalidLearningRate(f64),

    #[error("invalid hypothesis grid: {0}")]
    InvalidGrid(String),

    #[error("interval must have positive width, got [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("no hypothesis covers the examples: they span [{min}, {max}] but the grid is [{grid_lo}, {grid_hi}]")]
    NoCoveringHypothesis {
        min: f64,
        max: f64,
        grid_lo: f64,
        grid_hi: f64,
    },

    #[error("prior has {actual} weights but the space holds {expected} hypotheses")]
    PriorLengthMismatch { expected: usize, actual: usize },

    #[error("prior weights must be finite, non-negative, and not all zero")]
    InvalidPrior,

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("raw per-seed curves were not recorded for this result")]
    RawCurvesUnavailable,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
