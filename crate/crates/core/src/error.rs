use thiserror::Error;

/// Structural violations when building a simple digraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// What went wrong on a particular input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("missing header line")]
    MissingHeader,
    #[error("duplicate header line")]
    DuplicateHeader,
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header announced {expected} entries but {found} were given")]
    CountMismatch { expected: usize, found: usize },
}

/// Parse failure naming the 1-based input line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("search budget exceeded: {needed} candidates, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("exhaustive coloring refused: {n} vertices exceeds threshold {threshold}; use seeded mode")]
    ExhaustiveTooLarge { n: usize, threshold: usize },
    #[error("graph is not acyclic; cycle through vertices {cycle:?}")]
    Cyclic { cycle: Vec<usize> },
    #[error("invalid generator source: {0}")]
    InvalidSource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
