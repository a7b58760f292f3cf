use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: usize, vertex: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge id {id} out of range for a graph with {m} edges")]
    InvalidEdgeId { id: usize, m: usize },
    #[error("edge id {0} listed more than once")]
    DuplicateEdgeId(usize),
    #[error("no edge joins {0} and {1}")]
    NoSuchEdge(String, String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("operation needs at least {needed} vertices, graph has {n}")]
    TooFewVertices { needed: usize, n: usize },
    #[error("graph on {n} vertices exceeds the brute-force limit of {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("enumeration needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("edge set is not an edge-cut")]
    NotACut,
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph needs more edges than vertices (n = {n}, m = {m})")]
    TooFewEdges { n: usize, m: usize },
    #[error("graph is not cubic")]
    NotCubic,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("failure probability must lie in [0, 1], got {0}")]
    RhoOutOfRange(String),
    #[error("spectrum entry mu_{0} is not available")]
    IncompleteSpectrum(usize),
    #[error("edge counts differ ({0} vs {1})")]
    EdgeCountMismatch(usize, usize),
    #[error("polynomials are identical")]
    IdenticalPolynomials,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("cross-check failed: {0}")]
    Mismatch(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}
