use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed crossing tuple: {0}")]
    MalformedTuple(String),

    #[error("arc label {label} appears {count} times (expected exactly twice)")]
    ArcMultiplicity { label: i64, count: usize },

    #[error("empty diagram: no crossings and no free loops")]
    EmptyDiagram,

    #[error("braid letter {letter} out of range for {strands} strands")]
    BraidLetter { letter: i64, strands: usize },

    #[error("braid needs at least 2 strands, got {0}")]
    BraidStrands(usize),

    #[error("crossing index {index} out of range ({count} crossings)")]
    CrossingIndex { index: usize, count: usize },

    #[error("cannot parse notation: {0}")]
    Notation(String),

    #[error("cannot parse polynomial: {0}")]
    Polynomial(String),

    #[error("evaluation at zero with negative exponents")]
    EvalAtZero,

    #[error("Q(2) = {0} is not the square of a nonnegative integer")]
    NotASquare(String),

    #[error("diagram is split or empty; faces need a connected diagram with crossings")]
    NotConnected,

    #[error("node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
}

impl Error {
    /// True for the resource error, as opposed to bad input or a bug.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
