use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("configuration has {got} entries, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("configuration has a negative entry at vertex {vertex}")]
    NegativeEntry { vertex: usize },

    #[error("k = {k} is out of range 0..{n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("gcd(a, b) = {gcd} for a = {a}, b = {b}; the complete-graph theory needs coprime parameters, use the general model instead")]
    NotCoprime { a: i64, b: i64, gcd: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("search budget of {budget} states exceeded ({explored} explored, {frontier} still on the frontier)")]
    BudgetExceeded {
        budget: usize,
        explored: usize,
        frontier: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the labeled path runs past x = a (some vertex holds more than a chips) and is not skeletal for any k")]
    OverflowPath,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group elements belong to different parameters")]
    ParamMismatch,

    #[error("configurations are not equivalent under firing and borrowing")]
    NotEquivalent,
}

impl Error {
    /// True for errors caused by malformed textual input rather than by the
    /// mathematics.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
