use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no contacts")]
    NoContacts,

    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("window must be positive")]
    ZeroWindow,

    #[error("timestamp {time} precedes origin {origin}")]
    BeforeOrigin { time: u64, origin: u64 },

    #[error("a temporal graph needs at least one timestamp")]
    EmptyTimeDomain,

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
