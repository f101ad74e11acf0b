use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uncertainty deviation must be non-negative, got {0}")]
    NegativeDelta(f64),

    #[error("uncertain value components must be finite (best = {best}, delta = {delta})")]
    NonFinite { best: f64, delta: f64 },

    #[error("an uncertain series needs at least one observation")]
    EmptySeries,

    #[error("length mismatch: left has {left} elements, right has {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("subsequence of length {subsequence} is longer than the series of length {series}")]
    SubsequenceTooLong { subsequence: usize, series: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset has {series} series but {labels} labels")]
    LabelCountMismatch { series: usize, labels: usize },

    #[error("series {index} has length {found}, expected {expected}")]
    RaggedDataset { index: usize, expected: usize, found: usize },

    #[error("at least two distinct class labels are required, found {0}")]
    SingleClass(usize),

    #[error("invalid shapelet length bounds: min {min}, max {max} for series length {series}")]
    InvalidLengthBounds { min: usize, max: usize, series: usize },

    #[error("the time contract must be strictly positive")]
    ZeroContract,

    #[error("the shapelet count k must be at least 1")]
    ZeroShapeletCount,

    #[error("stochastic ordering needs at least 2 discretization steps, got {0}")]
    TooFewCdfPoints(usize),

    #[error("no shapelets supplied")]
    NoShapelets,

    #[error("feature vector has {found} features, model expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("uncertainty level c must be finite and non-negative, got {0}")]
    InvalidLevel(f64),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{path}: line {line}: {message}")]
    ParseLine { path: String, line: usize, message: String },

    #[error("{path}: line {line}, column {column}: cannot parse {value:?} as a number")]
    ParseValue { path: String, line: usize, column: usize, value: String },

    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid model configuration: {0}")]
    Config(String),

    #[error("{stage} failed: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    pub(crate) fn at_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage { stage, source: Box::new(source) }
    }
}
