use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("edge {edge} is not a {expected} edge")]
    WrongEdgeKind { edge: String, expected: &'static str },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),
    #[error("invalid degrees (p, q) = ({p}, {q}): {reason}")]
    InvalidDegrees { p: usize, q: usize, reason: &'static str },
    #[error("edge lengths must be integral: {0}")]
    NonIntegralLengths(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
