use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative input to {0}")]
    Negative(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field GF({p}^{k}) exceeds the enumeration budget of 2^20 elements")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element order exceeds cap {0}")]
    OrderCap(u64),

    #[error("group closure exceeds cap of {0} elements")]
    ClosureCap(usize),

    #[error("generators act on different modules")]
    MixedModules,

    #[error("{0} does not normalize the subgroup")]
    NotNormalizing(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vector space of size {size} exceeds scan budget {budget}")]
    Budget { size: u128, budget: u128 },

    #[error("unknown star case e = {0}")]
    UnknownCase(u32),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("bad model parameter: {0}")]
    ModelParam(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
