use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {index} has {size} member(s); edges need at least 2 distinct vertices")]
    EdgeTooSmall { index: usize, size: usize },

    #[error("edge {index} lists vertex {vertex} more than once")]
    RepeatedVertex { index: usize, vertex: usize },

    #[error("edge {index} contains vertex {vertex}, but the hypergraph has only {v} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        v: usize,
    },

    #[error("vertex count mismatch: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("minimum edge size is undefined for a hypergraph without edges")]
    NoEdges,

    #[error(
        "exhaustive enumeration refused: {v} vertices exceeds the limit of {limit}; \
         use the backtracking decision procedure (is_two_colourable / `propb check`) instead"
    )]
    EnumerationLimit { v: usize, limit: usize },

    #[error("colouring list is not closed under complement: {0}")]
    NotComplementClosed(String),

    #[error("colouring list contains a duplicate: {0}")]
    DuplicateColouring(String),

    #[error("colouring {0} is its own complement")]
    SelfComplementary(String),

    #[error("proper colouring {colouring} is unbalanced ({red} red, {blue} blue)")]
    UnbalancedColouring {
        colouring: String,
        red: usize,
        blue: usize,
    },

    #[error("hypergraph is already 2-colourable")]
    AlreadyColourable,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("strict alteration gave up after {retries} retries: best survivor count {best} exceeds threshold {threshold}")]
    RetriesExhausted {
        retries: u32,
        best: String,
        threshold: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("design check: {0}")]
    Design(String),

    #[error("unknown construction `{0}` (expected one of: triangle, fano, seymour-toft, h4, h8, paper-example)")]
    UnknownConstruction(String),
}
