use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("node {0} has no neighbors")]
    IsolatedNode(NodeId),
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(NodeId, NodeId),
    #[error("gave up after {attempts} placement attempts ({placed} of {target} edges placed)")]
    GraphTooDense {
        attempts: u64,
        placed: usize,
        target: usize,
    },
    #[error("no responsibilities to average")]
    EmptySample,
    #[error("series has no points")]
    EmptySeries,
    #[error("graph has no connected triples")]
    NoTriples,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
