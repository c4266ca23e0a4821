use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {n} outside 1..={n_max}")]
    IndexOutOfRange { n: usize, n_max: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid mode indices: {0}")]
    InvalidIndices(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    /// The family quadric has no points with all coordinates nonzero.
    #[error("degenerate family: quadric constant {constant} is not negative")]
    DegenerateFamily { constant: f64 },

    #[error("point is not on the family quadric (relative defect {defect:e})")]
    OffQuadric { defect: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
