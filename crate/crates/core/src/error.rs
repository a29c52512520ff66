use thiserror::Error;

/// Which coordinate of an observation pair a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::X => f.write_str("x"),
            Axis::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("observation contains NaN")]
    NanInput,

    #[error("{axis} cutpoint {index} is not finite or breaks strict ordering")]
    InvalidCutpoints { axis: Axis, index: usize },

    #[error("cell ({row}, {col}) is outside the {rows}x{cols} count matrix")]
    CellOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("cannot remove an observation from empty cell ({row}, {col})")]
    EmptyCell { row: usize, col: usize },

    #[error("sketches were built over different cutpoint grids")]
    GridMismatch,

    #[error("sample is empty")]
    EmptySample,

    #[error("probabilities must lie strictly inside (0, 1) and be strictly increasing")]
    InvalidProbabilities,

    #[error("levels must be non-empty, finite, sorted and distinct")]
    InvalidLevels,

    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("need at least 2 observations, got {0}")]
    TooFewObservations(usize),

    #[error("invalid stream configuration: {0}")]
    InvalidConfig(String),

    #[error("record {index}: {message}")]
    Source { index: u64, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
