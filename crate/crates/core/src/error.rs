use thiserror::Error;

use crate::ahp::ConsistencyReport;

/// Errors produced by the trust-decision engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("comparison matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },

    #[error("matrix order {0} is outside the supported range 1..=15")]
    OrderOutOfRange(usize),

    #[error("invalid comparison matrix: {0}")]
    InvalidMatrix(String),

    #[error("comparison values must be strictly positive, got {0}")]
    NonPositive(f64),

    #[error("cannot normalize an empty weight list")]
    Empty,

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("comparison matrix rejected: CR = {:.6} >= 0.1", .0.cr)]
    Inconsistent(ConsistencyReport),

    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),

    #[error("thresholds must satisfy 0 <= lower <= 0.5 < upper <= 1, got lower = {lower}, upper = {upper}")]
    InvalidThresholds { lower: f64, upper: f64 },

    #[error("ratio {name} = {value} is outside [0, 1]")]
    RatioOutOfRange { name: &'static str, value: f64 },

    #[error("sensitivity {value} is outside the catalog range [{min}, {max}]")]
    SensitivityOutOfRange { value: f64, min: f64, max: f64 },

    #[error("penalty coefficient undefined: {0}")]
    InvalidPenalty(String),

    #[error("unknown service level {0:?}")]
    UnknownLevel(String),

    #[error("invalid authentication event: {0}")]
    InvalidEvent(String),

    #[error("session no longer accepts attempts ({0})")]
    SessionClosed(&'static str),

    #[error("invalid sweep parameters: {0}")]
    InvalidSweep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
