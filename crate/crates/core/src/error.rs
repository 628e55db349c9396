use thiserror::Error;

/// Errors raised anywhere in the library. Agent and good numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least 2 agents, got {0}")]
    TooFewAgents(usize),
    #[error("an instance needs at least 1 good")]
    NoGoods,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("agent {agent} has negative utility for good {good}")]
    NegativeUtility { agent: usize, good: usize },
    #[error("utilities of agent {agent} sum to {sum}, expected 1")]
    RowSumNotOne { agent: usize, sum: String },
    #[error("agent {agent} values every good at 0")]
    ZeroRow { agent: usize },
    #[error("good {good} out of range 1..={m}")]
    GoodOutOfRange { good: usize, m: usize },
    #[error("agent {agent} out of range 1..={n}")]
    AgentOutOfRange { agent: usize, n: usize },
    #[error("good {good} is assigned {count} times")]
    NotAPartition { good: usize, count: usize },
    #[error("allocation shape {alloc_n}x{alloc_m} does not match instance {n}x{m}")]
    ShapeMismatch {
        n: usize,
        m: usize,
        alloc_n: usize,
        alloc_m: usize,
    },
    #[error("enumeration budget exceeded (cap {cap})")]
    BudgetExceeded { cap: u64 },
    #[error("not an envy cycle: {0}")]
    NotACycle(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bundle of agent {agent} is empty")]
    EmptyBundle { agent: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("syntax error at {location}: {message}")]
    Syntax { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
