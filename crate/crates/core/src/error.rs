use std::fmt;

/// Errors produced by construction, synthesis, parsing and simulation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("order {order} exceeds the size cap {cap}")]
    SizeCap { order: usize, cap: usize },

    #[error("{q} is not an odd prime power")]
    NotPrimePower { q: u64 },

    #[error("paley variant {variant} requires q = {expected} mod 4, got q = {q}")]
    InvalidResidue {
        q: u64,
        variant: PaleyVariant,
        expected: u64,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry at ({row}, {col}) is {value}, expected +1 or -1")]
    NotSign { row: usize, col: usize, value: i64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no construction under the size cap provides {0}")]
    Capacity(String),

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("construction invariant violated: {0}")]
    Internal(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("non-finite coefficient {0}")]
    NonFinite(f64),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the two Paley constructions to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PaleyVariant {
    /// `q = 3 mod 4`, order `q + 1`.
    One,
    /// `q = 1 mod 4`, order `2(q + 1)`.
    Two,
}

impl fmt::Display for PaleyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaleyVariant::One => f.write_str("one"),
            PaleyVariant::Two => f.write_str("two"),
        }
    }
}
