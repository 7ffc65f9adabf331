use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate continued fraction: division by zero while evaluating {0:?}")]
    DegenerateContinuedFraction(Vec<i64>),
    #[error("empty continued fraction")]
    EmptyContinuedFraction,
    #[error("continued fraction coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("{num}/{den} is not a reduced slope with 0 < q < p")]
    InvalidSlope { num: String, den: String },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("invalid knot parameters: {0}")]
    InvalidKnot(String),
    #[error("S-sequence of the empty word is undefined")]
    EmptyWord,
    #[error("invalid word syntax at byte {pos}: {found:?}")]
    Parse { pos: usize, found: char },
    #[error("invalid fraction syntax: {0:?}")]
    ParseFraction(String),
    #[error("word is not freely reduced")]
    NotReduced,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("word is not a subword of any element of the symmetrized set")]
    NotASubword,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{endpoints} is not a Farey edge")]
    NotFareyEdge { endpoints: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("representation oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
