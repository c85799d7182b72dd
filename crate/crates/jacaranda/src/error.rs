use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("AddressTooDeep: address of length {len} exceeds depth {depth}")]
    AddressTooDeep { len: usize, depth: usize },
    #[error("DepthMismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),
    #[error("NotFixable: image of {0} does not keep its root color")]
    NotFixable(u8),
    #[error("OddLength: address of length {0}")]
    OddLength(usize),
    #[error("NotMarked: both images share a root color")]
    NotMarked,
    #[error("NotInImage: {0}")]
    NotInImage(String),
    #[error("NotPowerOfTwo: length {0}")]
    NotPowerOfTwo(usize),
    #[error("NonPositive: {0}")]
    NonPositive(i64),
    #[error("NonIntegerResult: {0}")]
    NonIntegerResult(String),
    #[error("Shallow: need depth {need}, have {have}")]
    Shallow { need: usize, have: usize },
    #[error("Inconsistent: {0}")]
    Inconsistent(String),
    #[error("TypeUndetermined: {0}")]
    TypeUndetermined(String),
    #[error("Undetermined: cases {0:?}")]
    Undetermined(Vec<String>),
    #[error("NonConstantLevel: level {0}")]
    NonConstantLevel(usize),
    #[error("NotClosed: {0}")]
    NotClosed(String),
    #[error("MalformedGraph: {0}")]
    MalformedGraph(String),
    #[error("NotFound: {0}")]
    NotFound(String),
    #[error("TooDeep: depth {0}")]
    TooDeep(usize),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
