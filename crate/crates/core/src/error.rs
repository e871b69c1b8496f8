use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a semigroup must have at least one element")]
    Empty,

    #[error("row {row} has {found} entries, expected {expected}")]
    Shape {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry at row {row}, column {col} is {value}, outside 0..{order}")]
    Index {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    Associativity { a: usize, b: usize, c: usize },

    #[error("invalid names: {0}")]
    Names(String),

    #[error("element {0} is not an identity")]
    InvalidIdentity(usize),

    #[error("element {0} is not a zero")]
    InvalidZero(usize),

    #[error("an ideal must be nonempty")]
    EmptyIdeal,

    #[error("not an ideal: {0}")]
    InvalidIdeal(String),

    #[error("subset is not closed under multiplication")]
    NotClosed,

    #[error("semigroup has no zero element")]
    NoZero,

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("fixture `{0}` has no finite model")]
    NoFiniteModel(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid recipe `{recipe}`: {message}")]
    Recipe { recipe: String, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// An internal cross-check disagreed, e.g. the condensation height and the
    /// brute-force chain oracle. Always an engine bug.
    #[error("internal cross-check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
