use std::fmt;

use thiserror::Error;

/// A row or column of a Cayley table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(r) => write!(f, "row {r}"),
            Line::Column(c) => write!(f, "column {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry ({row}, {col}) = {value} is outside 0..{order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("expected {expected} entries, found {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("not a quasigroup: {0} repeats a symbol")]
    NotAQuasigroup(Line),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("image is not a bijection of 0..{order}")]
    NotABijection { order: usize },
    #[error("element {element} is outside 0..{order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset is not closed: {left}·{right} leaves it")]
    NotClosed { left: usize, right: usize },
    #[error("subset is not closed under inverses of {0}")]
    NotClosedUnderInverse(usize),
    #[error("subloop must have at least two elements")]
    TrivialSubloop,
    #[error("subset does not contain the identity")]
    MissingIdentity,
    #[error("unsupported property `{0}`")]
    UnsupportedProperty(String),
    #[error("unknown theorem `{0}`")]
    UnsupportedTheorem(String),
    #[error("permutation of order {actual} used with a loop of order {expected}")]
    OrderMismatch { expected: usize, actual: usize },
    #[error("cannot combine a {0} triple with a {1} triple")]
    KindMismatch(&'static str, &'static str),
    #[error("element {0} is not in the subloop")]
    NotInSubloop(usize),
    #[error("precondition {0} does not hold")]
    PreconditionPropertyMissing(&'static str),
    #[error("map does not send the subloop onto itself")]
    NotSBijection,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
