use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: String },

    #[error("duplicate edge {u} -- {v}")]
    DuplicateEdge { u: String, v: String },

    #[error("edge weight must be strictly positive and finite, got {weight}")]
    NonPositiveWeight { weight: f64 },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex {0} listed more than once in vertex set")]
    RepeatedMember(usize),

    #[error("vertex set covers every vertex; the complement is empty")]
    FullSet,

    #[error("group betweenness needs at least two vertices outside the set, found {0}")]
    ComplementTooSmall(usize),

    #[error("vertex {0} is a member of the target set")]
    EndpointInSet(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("enumeration of C({n}, {k}) = {count} subsets exceeds the budget of {budget}")]
    BudgetExceeded { n: usize, k: usize, count: u128, budget: u64 },

    #[error("group size k = {k} must satisfy 1 <= k < n = {n}")]
    InvalidGroupSize { k: usize, n: usize },

    #[error("{truncated} of {walks} walks from vertex {start} hit the step cap of {max_steps}")]
    TruncatedWalks { start: usize, truncated: u64, walks: u64, max_steps: u64 },

    #[error("step budget of {budget} exhausted after visiting {distinct} of {target} distinct vertices")]
    SampleBudgetExhausted { distinct: usize, target: usize, budget: u64 },

    #[error("path count overflow")]
    CountOverflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
