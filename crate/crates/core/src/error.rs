use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("distinct vertices required, got {0} twice")]
    SameVertex(usize),
    #[error("detector {0} is not in the code")]
    NotInCode(usize),
    #[error("alarm set is empty")]
    EmptyAlarm,
    #[error("vertex {0} is undominated, share undefined")]
    Undominated(usize),
    #[error("dimacs: line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("{0}")]
    InvalidCode(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
