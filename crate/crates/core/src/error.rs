use std::path::PathBuf;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("node {node} out of range (graph has {n} nodes)")]
    NodeOutOfRange { node: u64, n: usize },

    #[error("node {0} is isolated; total domination is undefined for degree-0 vertices")]
    IsolatedVertex(NodeId),

    #[error("k must be at least 1")]
    InvalidK,

    #[error("tag {value} for node {node} is not inside (0, 1)")]
    InvalidTag { node: NodeId, value: f64 },

    #[error("expected {expected} tags, got {got}")]
    TagCount { expected: usize, got: usize },

    #[error("graph has {n} nodes, exact solver budget is {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("power graph would exceed {limit} edges")]
    PowerGraphTooLarge { limit: usize },

    #[error("edge {{{0}, {1}}} already present")]
    EdgeExists(NodeId, NodeId),

    #[error("edge {{{0}, {1}}} not present")]
    EdgeMissing(NodeId, NodeId),

    #[error("self-loop on node {0} cannot be inserted")]
    SelfLoop(NodeId),

    #[error("element {0} is not contained in any subset")]
    Uncovered(u32),

    #[error("invalid benchmark spec: {0}")]
    InvalidSpec(String),

    #[error("report is empty")]
    EmptyReport,

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
