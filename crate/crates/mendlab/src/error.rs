use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("search budget of {0} verifier calls exceeded")]
    BudgetExceeded(u64),
    #[error("no valid global solution exists on this instance")]
    Unsolvable,
    #[error("mendability violated: hole at node {node} admits no {k}-mend")]
    MendabilityViolated { node: NodeId, k: usize },
    #[error("patches of two same-color components at distance {dist} <= {r}")]
    PatchOverlap { dist: usize, r: usize },
    #[error("diagram has no flexible state; not restrictable")]
    NotRestrictable,
    #[error("invalid partial solution: {0}")]
    InvalidPartialSolution(String),
    #[error("window brute force found no completion at node {0}")]
    WindowExceeded(NodeId),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
