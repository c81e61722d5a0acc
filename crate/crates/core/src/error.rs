use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("not a string link: {0}")]
    NotStringLink(String),

    #[error("strand index {index} out of range 1..={n}")]
    StrandIndex { index: usize, n: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandCountMismatch(usize, usize),

    #[error("invalid index sequence `{0}`: {1}")]
    InvalidIndex(String, String),

    #[error("`{0}` is not a subsequence of `{1}`")]
    NotSubsequence(String, String),

    #[error("crossing {0} does not exist")]
    InvalidCrossing(usize),

    #[error("expected a knot diagram, found {0} components")]
    NotAKnot(usize),

    #[error("skein evaluation exceeded the node budget of {0}")]
    BudgetExceeded(u64),

    #[error("series has constant term {0}, expected 1")]
    NotInvertible(String),

    #[error("meridian fixpoint did not converge after {0} sweeps")]
    NonConvergence(usize),

    #[error("signed sum {sum} is not divisible by {divisor}")]
    Divisibility { sum: String, divisor: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
