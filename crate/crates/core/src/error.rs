use crate::search::SearchResult;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by graph construction, generators, searches and encoders.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: String },

    #[error("graph is disconnected: vertex {to} is unreachable from vertex {from}")]
    Disconnected { from: usize, to: usize },

    #[error("number of shortest {u},{v}-paths exceeds cap {cap}")]
    PathCapExceeded { u: usize, v: usize, cap: usize },

    #[error("depth {n} exceeds the construction limit {limit}")]
    DepthLimit { n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "graph with {vertices} vertices exceeds the exhaustive-search limit {limit}; \
         use branch_and_bound_max instead"
    )]
    GraphTooLarge { vertices: usize, limit: usize },

    #[error("node budget {budget} exhausted; best lower bound so far is {}", best.optimum)]
    NodeBudgetExhausted { budget: u64, best: Box<SearchResult> },

    #[error("optima enumeration exceeded the cap of {cap} sets")]
    OptimaCapExceeded { cap: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
