use thiserror::Error;

use crate::gog::Orbit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("edge `{edge}` is not reducible at end {end}")]
    NotReducible { edge: String, end: usize },

    #[error("graph is reducible along edge `{edge}` (end {end}); reduce it first")]
    MustReduceFirst { edge: String, end: usize },

    #[error("operation not supported for the {oracle} oracle: {what}")]
    UnsupportedOracle { oracle: &'static str, what: String },

    #[error("vertex `{vertex}` is not a one-vertex depth-zero raft")]
    WrongVertex { vertex: String },

    #[error("raft has depth {0}; only depth-zero rafts have a kind")]
    WrongLevel(usize),

    #[error("invalid graph of groups: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("need at least 3 distinct slopes, found {0}")]
    Underdetermined(usize),

    #[error("pattern is not a planar line pattern: {0}")]
    NotLinePattern(String),

    #[error("ball and depth assignment come from different graphs (orbit {0} unknown)")]
    GraphMismatch(Orbit),

    #[error("depth assignment has no finite labeling (verdict {0})")]
    NoFiniteDepth(String),

    #[error("depth labels disagree with the ball: {0}")]
    InconsistentLabels(String),

    #[error("radius must be at least 1 for a crossing check")]
    RadiusZero,

    #[error("branch cap must be at least 1")]
    BranchCapZero,

    #[error("tree ball exceeds {0} nodes")]
    BallTooLarge(usize),
}
