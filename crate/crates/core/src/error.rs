use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge set contains a directed cycle")]
    CycleDetected,

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("fingerprint verification failed on {attempts} consecutive samples")]
    RetryLimitExceeded { attempts: usize },

    #[error("invalid block size {block} for {n} vertices")]
    InvalidBlockSize { block: usize, n: usize },

    #[error("verification solver contract violated: {0}")]
    SolverContractViolation(String),

    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),

    #[error("graph is not 4-partite: {0}")]
    NotFourPartite(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, len })
    }
}
