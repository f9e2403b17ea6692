use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{family}{rank} is not an ADE diagram")]
    IllegalType { family: char, rank: usize },
    #[error("{0:?} is not a permutation of the vertex labels")]
    NotAPermutation(Vec<usize>),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vertex {0} is neither a source nor a sink")]
    NotExtremal(usize),
    #[error("sweep found no admissible source at step {0}")]
    SweepStuck(usize),
    #[error("{0}")]
    TooLarge(String),
    #[error("form table failed to close after a full period")]
    PeriodicityViolation,
    #[error("orbit extension produced conflicting assignments")]
    InconsistentExtension,
    #[error("ad x did not vanish within the dimension bound")]
    NotNilpotent,
    #[error("no sl2 normalization exists for the given root vector")]
    NoSl2Triple,
    #[error("root vector for {0} was needed before it was constructed")]
    MissingPredecessor(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("{0:?} is not a positive root with interval support")]
    NotPositiveRoot(Vec<i64>),
    #[error("Hall counts disagree across fields: {0}")]
    NonConstant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
