use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("node set is not contained in the node set of the hypergraph: {0:?}")]
    NotSubset(Vec<String>),

    #[error("empty node set")]
    EmptySet,

    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("no edge meets the node set {0:?}")]
    NoIncidentEdge(Vec<String>),

    #[error("{what} has {size} nodes, above the configured limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("node {0} is not a nest point")]
    NotNestPoint(String),

    #[error("edges at node {0} do not form a chain")]
    NotChain(String),

    #[error("invalid elimination order: {0}")]
    InvalidOrder(String),

    #[error("invalid beta-cycle: {0}")]
    InvalidCycle(String),

    #[error("signed edge {0} is not in the hypergraph")]
    MissingEdge(String),

    #[error("target edge must strictly contain the signed edge: {0}")]
    NotStrictSuperset(String),

    #[error("host mismatch: {0}")]
    HostMismatch(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("invalid linear system: {0}")]
    InvalidSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
