use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every engine and the CLI.
///
/// Each variant maps onto a stable diagnostic code (see [`Error::code`]) so
/// scripts can match on the code rather than on the message text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("intervals {first} and {second} coincide")]
    Duplicate { first: usize, second: usize },

    #[error("interval {inner} is contained in interval {outer}; model is not proper")]
    NotProper { outer: usize, inner: usize },

    #[error("interval {0} has zero or negative length")]
    Degenerate(usize),

    #[error("vertex {0} has a negative cost")]
    NegativeCost(usize),

    #[error("index {index} out of range 1..={n}")]
    Index { index: usize, n: usize },

    #[error("empty model or graph")]
    Empty,

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("instance too large: n = {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("node does not belong to the {0} digraph")]
    VariantMismatch(&'static str),

    #[error("not an arc of class {0}")]
    NotArc(&'static str),

    #[error("projected node count {projected} exceeds budget {cap}")]
    Budget { projected: u64, cap: u64 },

    #[error("not a source-to-sink path: {0}")]
    NotPath(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::Degenerate(_) => "E_PARSE",
            Error::Duplicate { .. } => "E_DUPLICATE",
            Error::NotProper { .. } => "E_NOT_PROPER",
            Error::NegativeCost(_) => "E_NEG_COST",
            Error::Index { .. } => "E_INDEX",
            Error::Empty => "E_EMPTY",
            Error::Param(_) => "E_PARAM",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::VariantMismatch(_) => "E_VARIANT_MISMATCH",
            Error::NotArc(_) => "E_NOT_ARC",
            Error::Budget { .. } => "E_BUDGET",
            Error::NotPath(_) => "E_NOT_PATH",
        }
    }
}
