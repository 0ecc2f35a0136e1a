use thiserror::Error;

use crate::table::Elem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("order {0} exceeds the supported maximum of 4096")]
    TooLarge(usize),
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("identity is element {0}, not 0 (use relabelling)")]
    IdentityNotZero(Elem),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element {0} out of range")]
    ElementOutOfRange(Elem),
    #[error("subset is not closed under multiplication and division")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("element {0} is not in the nucleus")]
    NotNuclear(Elem),
    #[error("loop is not Buchsteiner (witness {0:?})")]
    NotBuchsteiner(Vec<Elem>),
    #[error("associator subloop is not contained in the nucleus")]
    AssociatorsNotNuclear,
    #[error("loop is not {m}-inverse (witness {witness:?})")]
    NotMInverse { m: i64, witness: Vec<Elem> },
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("sampled mode needs an explicit seed")]
    MissingSeed,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = LoopError> = std::result::Result<T, E>;
