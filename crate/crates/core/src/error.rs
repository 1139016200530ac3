use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no syndrome table for block at {start} (len {len}, k {k_local})")]
    TableNotBuilt {
        start: usize,
        len: usize,
        k_local: usize,
    },

    #[error("exhaustive extension refused: {k_local} local information bits exceeds guard {guard}")]
    ExhaustiveTooLarge { k_local: usize, guard: usize },

    #[error("information bit re-adjustment is infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported table format version {found} (expected {expected})")]
    VersionMismatch { found: u16, expected: u16 },

    #[error("table checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    Checksum { stored: u32, computed: u32 },

    #[error("malformed table file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
