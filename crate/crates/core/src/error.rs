use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no arcs")]
    NoArcs,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid binary cache: {0}")]
    Format(String),

    #[error("graph too large: {0}")]
    TooLarge(String),

    #[error("insufficient tail: {usable} usable log-bins at or past degree {tail_start}")]
    InsufficientTail { usable: usize, tail_start: u64 },

    #[error("sample too sparse: no open K22 in the sample (K22 estimate Y = {y})")]
    SampleTooSparse { y: f64 },

    #[error("no fork exists in the graph")]
    NoForks,

    #[error("empty fork population for {0}")]
    EmptyPopulation(&'static str),

    #[error("undefined estimate: no open structure observed after {iterations} iterations")]
    UndefinedEstimate { iterations: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("no node growth: (1-p)(alpha+beta) = 0")]
    NoNodeGrowth,

    #[error("infeasible parameters at p = {p}: {reason}")]
    Infeasible { p: f64, reason: String },

    #[error("node {node} out of range (n = {n})")]
    NodeOutOfRange { node: u64, n: usize },

    #[error("arc {0} -> {1} already present")]
    ArcExists(u32, u32),

    #[error("no eligible users (every node has out-degree 0)")]
    NoEligibleUsers,

    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
