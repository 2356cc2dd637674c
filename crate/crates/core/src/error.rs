use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} has weight {weight}, expected {expected}")]
    WeightMismatch {
        partition: String,
        weight: u32,
        expected: u32,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid cycle tuple: {0}")]
    InvalidTuple(String),
    #[error("point {0} is not among the marked points")]
    NotMarked(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} is not a single cycle of full length")]
    NotFullCycle(String),
    #[error("index {index} outside of matrix truncation {bound}")]
    OutOfTruncation { index: usize, bound: usize },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
