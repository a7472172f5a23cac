use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power ≥ 2")]
    InvalidGround(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("enumeration budget exceeded: {needed} > {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("out of table: {0}")]
    OutOfTable(String),
    #[error("hom fingerprint is not injective on classes {0} and {1}")]
    FingerprintCollision(usize, usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("generator `{gen}` is not available in the {algebra} algebra")]
    WrongAlgebra { gen: String, algebra: String },
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn out_of_table(what: impl Into<String>) -> Self {
        Error::OutOfTable(what.into())
    }
}
