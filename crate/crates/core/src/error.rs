use thiserror::Error;

/// Errors raised while building distributions or evaluating negators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution must have at least 2 entries, got {0}")]
    Length(usize),

    #[error("probability p[{index}] = {value} is outside [0, 1]")]
    Range { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, not 1 (tolerance {tol:e})")]
    Sum { sum: f64, tol: f64 },

    #[error("index {index} out of range 1..={n}")]
    Index { index: usize, n: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate statistics: n*MP - 1 = {0} is not positive")]
    DegenerateStats(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by parameters outside their mathematical domain,
    /// as opposed to malformed or invalid input data.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::DegenerateStats(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
