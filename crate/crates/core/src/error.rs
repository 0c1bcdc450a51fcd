use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("graph has {n} vertices, cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("operation undefined on the empty graph")]
    EmptyGraph,

    #[error("endpoints must differ (got {0} twice)")]
    SameVertex(usize),

    #[error("{0} is not an edge")]
    NotAnEdge(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown graph family or name: {0}")]
    UnknownFamily(String),

    #[error("time budget exhausted")]
    BudgetExhausted,

    #[error("exact search infeasible: {what} has size {size}, cap is {cap}")]
    SearchInfeasible {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("fragment catalog exceeds cap of {cap} entries")]
    CatalogTooLarge { cap: usize },

    #[error("not a scheme: {0}")]
    NotAScheme(String),

    #[error("stream fingerprint mismatch: cursor has {cursor}, stream has {stream}")]
    StreamMismatch { cursor: String, stream: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<crate::budget::Exhausted> for Error {
    fn from(_: crate::budget::Exhausted) -> Self {
        Error::BudgetExhausted
    }
}
