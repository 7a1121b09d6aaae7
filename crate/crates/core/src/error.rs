use thiserror::Error;

/// Position-carrying parse failure for the textual formats (permutations,
/// cycle types, ground partitions, generating-set specs).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position} near `{token}`: {message}")]
pub struct ParseError {
    pub token: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(token: impl Into<String>, position: usize, message: impl Into<String>) -> Self {
        Self {
            token: token.into(),
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("{what}: n = {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("generating set is not inverse-closed")]
    NotInverseClosed,

    #[error("generating set contains the identity")]
    ContainsIdentity,

    #[error("generating set is not closed under conjugation; use the numeric or exact linear-algebra path instead")]
    NotNormal,

    #[error("generating set carries no nicely-separated partition")]
    MissingPartition,

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("{what}: {vertices} vertices exceeds the budget of {budget}; {hint}")]
    BudgetExceeded {
        what: &'static str,
        vertices: usize,
        budget: usize,
        hint: &'static str,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
