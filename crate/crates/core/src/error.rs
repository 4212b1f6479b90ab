use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("power series with zero constant term is not invertible")]
    NonInvertibleSeries,

    #[error("d-th root requires a series with constant term 1")]
    RootNormalization,

    #[error("polynomial is not monic original: {0}")]
    NotMonicOriginal(String),

    #[error("{d} is not a proper divisor of {n}")]
    NotProperDivisor { n: usize, d: usize },

    #[error("{0} is not composite")]
    NotComposite(usize),

    #[error("degree {actual} exceeds the bound {bound}")]
    DegreeTooLarge { actual: usize, bound: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected {expected} coordinates, got {actual}")]
    CoordinateCount { expected: usize, actual: usize },

    #[error("invalid tube: {0}")]
    InvalidTube(String),

    #[error("invalid collision parameters: {0}")]
    InvalidCollision(String),

    #[error("unsupported estimator configuration: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
