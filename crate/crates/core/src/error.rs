use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("code of dimension {dim} exceeds the enumeration guard of 2^{max_dim}")]
    CodeTooLarge { dim: usize, max_dim: usize },

    #[error("enumeration of {what} exceeds the guard ({limit})")]
    GuardExceeded { what: &'static str, limit: u64 },

    #[error("subgroup closure exceeds {limit} elements")]
    ClosureTooLarge { limit: usize },

    #[error("codes are not nested at level {level}")]
    NotNested { level: usize },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("generators do not span a full-rank lattice (missing pivot in column {column})")]
    NotFullRank { column: usize },

    #[error("integer overflow in exact arithmetic")]
    IntegerOverflow,

    #[error("coset set is not a subgroup")]
    NotASubgroup,

    #[error("lattice does not contain {modulus}Z^n")]
    MissingScaledIntegers { modulus: u64 },

    #[error("equivalence violated: {0}")]
    EquivalenceViolation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors raised by a size guard rather than by bad input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::CodeTooLarge { .. } | Error::GuardExceeded { .. } | Error::ClosureTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
