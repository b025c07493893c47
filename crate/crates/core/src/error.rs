use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("invalid symbol {0:?}: binary words use only '0' and '1'")]
    InvalidSymbol(char),

    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("order {order} exceeds the cap of {cap} (a sequence of order n holds 2^n bits)")]
    OrderTooLarge { order: u32, cap: u32 },

    #[error("order {order} exceeds the greedy construction cap of {cap}")]
    GreedyOrderTooLarge { order: u32, cap: u32 },

    #[error("order {order} is too small: {what} needs order >= {min}")]
    OrderTooSmall {
        order: u32,
        min: u32,
        what: &'static str,
    },

    #[error("word of length {actual} cannot be a de Bruijn sequence of order {order} (expected length {expected})")]
    LengthMismatch {
        order: u32,
        expected: u64,
        actual: u64,
    },

    #[error("recurrence order must be at least {min}, got {order}")]
    RecurrenceOrder { order: u32, min: u32 },

    #[error("recurrence needs {expected} initial values, got {actual}")]
    InitialValues { expected: usize, actual: usize },

    #[error("64-bit overflow computing {what} at index {index}")]
    Overflow { what: &'static str, index: u64 },

    #[error("series truncation degrees differ ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },

    #[error("series division needs a denominator with constant term +1 or -1, got {0}")]
    NonUnitConstant(i64),

    #[error("word is not a concatenation of blocks 0^i 1^j (i, j >= 1): {0}")]
    NotPrimitiveConcatenation(String),

    #[error("decomposition invariant violated: {0}")]
    InvariantViolation(String),

    #[error("enumeration of {what} is capped at {cap}, requested {requested}")]
    EnumerationCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("{0}")]
    Unsupported(String),
}
