use std::fmt;

/// Errors raised by the word, index, power and search layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rational power `u^(a/b)` was requested with `b != |u|`.
    ExponentDenominatorMismatch { den: u64, root_len: u64 },
    /// The operand contains the sentinel letter where none is allowed.
    SentinelInOperand,
    /// `append_sentinel` was called on a word that already ends in one.
    SentinelAlreadyPresent,
    /// A letter sequence places the sentinel anywhere but the final position.
    MisplacedSentinel,
    /// The operation is undefined on the empty word.
    EmptyWord,
    /// The query word is not a factor of the indexed word.
    NotAFactor,
    /// Marker index outside `1..=floor(m(u))`.
    MarkerIndexOutOfRange { index: u64, max: u64 },
    /// Markers are materialized for primitive roots only.
    NotPrimitive,
    /// Theorem and conjecture bounds need `k >= 3`.
    InvalidK { k: u32 },
    /// The requested search space exceeds the configured word-count cap.
    BudgetExceeded { required: u128, budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ExponentDenominatorMismatch { den, root_len } => {
                write!(f, "exponent denominator {den} does not equal root length {root_len}")
            }
            Error::SentinelInOperand => write!(f, "operand contains the sentinel letter"),
            Error::SentinelAlreadyPresent => write!(f, "word already carries a sentinel"),
            Error::MisplacedSentinel => write!(f, "sentinel letter is only allowed at the final position"),
            Error::EmptyWord => write!(f, "operation is undefined on the empty word"),
            Error::NotAFactor => write!(f, "word is not a factor of the indexed source"),
            Error::MarkerIndexOutOfRange { index, max } => {
                write!(f, "marker index {index} outside 1..={max}")
            }
            Error::NotPrimitive => write!(f, "word is not primitive"),
            Error::InvalidK { k } => write!(f, "k must be at least 3, got {k}"),
            Error::BudgetExceeded { required, budget } => {
                write!(f, "search space holds {required} words, exceeding the budget of {budget}")
            }
        }
    }
}

impl std::error::Error for Error {}
