use thiserror::Error;

use crate::qpoly::QPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: QPoly },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a Dyck path: {0}")]
    InvalidPath(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: u64, size: u64 },
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("not a linear extension")]
    NotLinearExtension,
    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("tableau entry {entry} out of range (must be below {bound})")]
    EntryOutOfRange { entry: usize, bound: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("cell ({row}, {col}) not in diagram")]
    CellNotInDiagram { row: usize, col: usize },
    #[error("not a maximal chain")]
    NotMaximalChain,
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("relation is not antisymmetric: facets {0} and {1} lie on a cycle")]
    NotAntisymmetric(usize, usize),
}
