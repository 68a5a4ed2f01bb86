use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants are grouped by how a caller is expected to react: malformed input,
/// infeasible parameters or states, enumeration guards, and numerical failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("edge {edge} is malformed: {reason}")]
    MalformedEdge { edge: usize, reason: String },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("not a graph: edge {edge} has {size} vertices")]
    NotAGraph { edge: usize, size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible state: {0}")]
    InfeasibleState(String),

    #[error("no feasible adjacent pair: {0}")]
    NoAdjacentPair(String),

    #[error("enumeration of {size} states exceeds the guard of {limit}")]
    GuardExceeded { size: f64, limit: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
