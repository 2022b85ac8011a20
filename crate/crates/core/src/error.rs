use thiserror::Error;

use crate::tree::NodePath;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative base in fractional power")]
    NegativeBase,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("root of an interval containing negative numbers")]
    NegativeRoot,
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(String, String),
    #[error("atomic index {index} outside dimension bound {bound}")]
    IndexOutOfBounds { index: u64, bound: u64 },
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("node {0} is not (yet) in the tree")]
    NotInTree(NodePath),
    #[error("node {0} is terminal")]
    TerminalNode(NodePath),
    #[error("insufficient stage at node {node}: residual mass {residual} not below 2^-{threshold_exp}")]
    InsufficientStage {
        node: NodePath,
        residual: String,
        threshold_exp: u32,
    },
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),
    #[error("label unavailable: {0}")]
    Unmaterializable(String),
    #[error("empty schedule")]
    EmptySchedule,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("expected {expected} atoms, found {found}")]
    AtomCount { expected: usize, found: usize },
    #[error("generator {0} mapped twice")]
    GeneratorCollision(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("chain {0} does not exist")]
    NoSuchChain(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that a caller can cure by raising the stage or depth.
    pub fn is_insufficient(&self) -> bool {
        matches!(
            self,
            Error::InsufficientStage { .. } | Error::InsufficientDepth(_) | Error::InsufficientPrecision(_)
        )
    }
}
