use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("words must be nonempty")]
    EmptyWord,
    #[error("input word list is empty")]
    EmptyInput,
    #[error("word {0} is a substring of another word")]
    NotSubstringFree(usize),
    #[error("periodicity {a} out of range for a word of length {len}")]
    PeriodicityOutOfRange { a: usize, len: usize },
    #[error("node id {0} is out of range")]
    InvalidNode(usize),
    #[error("node id {0} appears more than once")]
    RepeatedNode(usize),
    #[error("position {pos} out of range for a cycle of {len} nodes")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("cycle index {0} is out of range")]
    InvalidCycle(usize),
    #[error("no cycles were chosen")]
    EmptyChoice,
    #[error("instance has {m} words, oracle limit is {max}")]
    TooLarge { m: usize, max: usize },
    #[error("oracle limit {0} exceeds the hard cap of 20 nodes")]
    LimitCap(usize),
    #[error("oracle exceeded its time budget of {0:?}")]
    BudgetExceeded(std::time::Duration),
    #[error("edge ({0},{1}) is already in the cover")]
    EdgeAlreadyPresent(usize, usize),
    #[error("successor map is not a permutation")]
    NotACover,
    #[error("unknown path solver `{0}`")]
    UnknownSolver(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenSpec(String),
    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: usize, reason: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
