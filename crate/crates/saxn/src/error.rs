//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by series construction, transforms, statistics and IO.
#[derive(Debug, Error)]
pub enum Error {
    /// Series shorter than the minimum an operation requires.
    #[error("series too short: length {len}, need at least {min}")]
    TooShort { len: usize, min: usize },

    /// A sample was NaN or infinite.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// Standard deviation at or below the degeneracy epsilon (constant input).
    #[error("degenerate series: population sigma {sigma:e} is at or below {epsilon:e}")]
    DegenerateSeries { sigma: f64, epsilon: f64 },

    /// PAA means have near-zero spread, re-normalization is undefined.
    #[error("degenerate PAA vector: population sigma {sigma:e} is at or below {epsilon:e}")]
    DegeneratePaa { sigma: f64, epsilon: f64 },

    /// Word length does not divide the series length.
    #[error(
        "word length {word_length} does not divide series length {len}; \
             truncate the series or pick a divisor"
    )]
    IndivisibleLength { len: usize, word_length: usize },

    /// Word length outside [1, n].
    #[error("invalid word length {word_length} for series of length {len}")]
    InvalidWordLength { len: usize, word_length: usize },

    /// Alphabet cardinality outside the supported [2, 26] range.
    #[error("invalid cardinality {cardinality}: supported range is 2..=26")]
    InvalidCardinality { cardinality: usize },

    /// A character outside the alphabet for the stated cardinality.
    #[error("invalid symbol {symbol:?} for alphabet of cardinality {cardinality}")]
    InvalidSymbol { symbol: char, cardinality: usize },

    /// Operands disagree on length, cardinality or origin length.
    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },

    /// Requested ACF lag is not smaller than the series length.
    #[error("lag {lag} too large for series of length {len}")]
    LagTooLarge { lag: usize, len: usize },

    /// Chi-squared validity floor violated (expected count per cell < 5).
    #[error(
        "too few samples: {total} observations over {cardinality} cells, \
             need at least {min}"
    )]
    TooFewSamples {
        total: u64,
        cardinality: usize,
        min: u64,
    },

    /// Argument outside the mathematical domain of a special function.
    #[error("domain error: {context}")]
    DomainError { context: String },

    /// Regression predictor has zero variance.
    #[error("degenerate predictor: x values are constant")]
    DegeneratePredictor,

    /// Input file does not exist.
    #[error("file not found: {path}")]
    FileNotFound { path: String },

    /// Input file failed to parse.
    #[error("parse error at {path}:{line}: {message}")]
    ParseError {
        path: String,
        line: usize,
        message: String,
    },

    /// Named or indexed column absent from the file.
    #[error("column {column:?} not found in {path}")]
    ColumnNotFound { path: String, column: String },

    /// A field that should be numeric is not.
    #[error("non-numeric value {token:?} at {path}:{line} column {column}")]
    NonNumericValue {
        path: String,
        line: usize,
        column: usize,
        token: String,
    },

    /// Invalid runtime configuration (policy, study config, dataset spec).
    #[error("invalid config: {context}")]
    InvalidConfig { context: String },

    /// Underlying IO failure.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
