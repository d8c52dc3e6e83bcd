use thiserror::Error;

/// Reason a line of graph text was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header (expected \"<order> <edge-count>\")")]
    MalformedHeader,
    #[error("malformed edge line (expected \"<u> <v>\")")]
    MalformedEdge,
    #[error("endpoint {0} out of range")]
    OutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    Duplicate(usize, usize),
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("invalid graph6 data")]
    Graph6,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid construction expression: {0}")]
    Build(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("pattern has no edges")]
    EmptyPattern,
    #[error("pattern has {order} vertices; subset enumeration supports at most {max}")]
    PatternTooLarge { order: usize, max: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("hcf is infinite (every imbalance is zero)")]
    InfiniteHcf,
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("host has {order} vertices; the bitmask solver supports at most {max}")]
    HostTooLarge { order: usize, max: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed {what}: {msg}")]
    Format { what: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
