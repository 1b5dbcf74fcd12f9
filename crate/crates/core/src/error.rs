use crate::Nat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot encode an empty list")]
    EmptyList,
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("not a decimal natural number: {0:?}")]
    InvalidNumber(String),
    #[error("invalid state table: {0}")]
    InvalidTable(String),
    #[error("{0} is not the handle of a constant sequence")]
    NotAzHandle(Nat),
    #[error("empty interval: lower bound {lo} exceeds upper bound {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("interval [{lo}, {hi}] is not inside [0, 1]")]
    IntervalOutOfRange { lo: String, hi: String },
    #[error("machine {index} did not halt on input {input} within {budget} steps")]
    BudgetOverrun { index: Nat, input: Nat, budget: u64 },
    #[error("error ratio is undefined at stage 0")]
    ZeroStage,
    #[error("unknown property id {0:?}")]
    UnknownProperty(String),
    #[error("malformed trace record: {0}")]
    Trace(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
