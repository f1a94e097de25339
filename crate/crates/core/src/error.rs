use thiserror::Error;

/// Errors surfaced by the simulation and verification APIs.
#[derive(Debug, Error)]
pub enum Error {
    /// Polar decomposition of the zero path is undefined.
    #[error("zero path: polar decomposition requires a nonzero sup norm")]
    ZeroPath,

    /// Parameter outside its admissible range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The construction family excludes tail index 1.
    #[error("alpha = 1 is excluded; constructions require alpha in (0,2) with alpha != 1")]
    AlphaOne,

    /// Closed-form truncation mean exists only for alpha > 1.
    #[error("operation requires alpha > 1 (got alpha = {0})")]
    AlphaBelowOne(f64),

    /// Not enough usable data points (degenerate or too-short sample).
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Evaluation time outside the sampled window.
    #[error("t = {t} outside the sampled window [0, {t_max}]")]
    OutOfWindow { t: f64, t_max: f64 },

    /// A sample required by a statistic is empty.
    #[error("empty sample: {0}")]
    EmptySample(String),

    /// Cross-construction comparison with inconsistent targets.
    #[error("mismatched targets: {0}")]
    MismatchedTargets(String),

    /// Spectral tail constants sum to zero.
    #[error("degenerate tails: c_plus + c_minus must be positive")]
    DegenerateTails,

    /// Malformed input data (CSV schema, ingestion).
    #[error("data error: {0}")]
    Data(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
