use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("illegal grid move: {0}")]
    IllegalMove(String),

    #[error("diagram is not diagonal")]
    NotDiagonal,

    #[error("diagram does not represent a knot ({0})")]
    NotAKnot(String),

    #[error("grid size {n} exceeds the full-enumeration cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),

    #[error("deconvolution produced a negative coefficient at (M={m}, A={a})")]
    NotDivisible { m: i32, a: i32 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("tangle extraction found a closed component")]
    MalformedTangle,

    #[error("an X-marking shares an edge with an O-marking at column {col}")]
    AdjacencyViolation { col: usize },

    #[error("post-exchange counts disagree with the case table: {0}")]
    CaseMismatch(String),

    #[error("diagram has no crossings")]
    NoCrossings,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GridError>;
