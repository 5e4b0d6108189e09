use thiserror::Error;

/// Errors raised by graph construction, counting and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("edge index {index} out of range (graph has {edges} edges)")]
    EdgeOutOfRange { index: usize, edges: usize },

    #[error("label arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} does not separate the graph")]
    NotSeparating { vertex: usize },

    #[error("{what} exceeds bound ({size} > {bound})")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("target is not twin-free (vertices {0} and {1} are twins)")]
    NotTwinFree(usize, usize),

    #[error("vertex weights sum to zero; h is undefined for this target")]
    ZeroWeightSum,

    #[error("y = 1 makes the Tutte argument (y-1+n)/(y-1) undefined")]
    DegenerateY,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("count {count} is not divisible by {divisor}")]
    NonExactDivision { count: String, divisor: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }

    /// True for errors caused by malformed or out-of-contract input.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::BoundExceeded { .. } | Error::NonExactDivision { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
