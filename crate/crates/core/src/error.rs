use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::feasibility::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}:{line}: {message}")]
    ConfigFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(
        "instance too large for exact search: {sms} SMs and {cues} CUEs \
         (limits are {max_sms} SMs and {max_cues} CUEs)"
    )]
    InstanceTooLarge {
        sms: usize,
        cues: usize,
        max_sms: usize,
        max_cues: usize,
    },

    #[error("exact search exhausted its budget of {0} nodes")]
    NodeBudgetExhausted(u64),

    #[error("drop {drop_index}: allocation failed validation ({} violations, first: {})",
        .violations.len(), .violations[0])]
    Validation {
        drop_index: u64,
        violations: Vec<Violation>,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
