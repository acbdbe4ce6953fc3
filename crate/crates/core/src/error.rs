use thiserror::Error;

/// Which axis of a Cayley table broke the Latin-square property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {line} {index} repeats symbol {symbol}")]
    NotLatinSquare {
        line: Line,
        index: usize,
        symbol: usize,
    },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {index} is out of range for a loop of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("not a commutative Moufang loop: {reason} (witness {witness:?})")]
    NotCml { reason: String, witness: Vec<usize> },
    #[error("subset is not a normal subloop")]
    NotNormal,
    #[error("order {order} exceeds the maximum loop order {max}")]
    SizeOverflow { order: usize, max: usize },
    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a permutation of degree {degree}")]
    NotAPermutation { degree: usize },
    #[error("group order {order} exceeds the enumeration threshold {limit}")]
    TooLarge { order: String, limit: usize },
    #[error("loop order {order} exceeds the lattice budget {limit}")]
    BudgetExceeded { order: usize, limit: usize },
    #[error("centralizer is not closed: {witness:?}")]
    ClosureViolation { witness: Vec<usize> },
    #[error("maximal subloop is not normal: {witness:?}")]
    NormalityViolation { witness: Vec<usize> },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("upper central series stalls before reaching the whole structure")]
    NotCentrallyNilpotent,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid construction: {0}")]
    BadConstruction(String),
}

impl Error {
    /// True for errors that come from a size or budget limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. } | Error::BudgetExceeded { .. } | Error::SizeOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
