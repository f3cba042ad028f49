//! Expertise learning, scoring, ranking and vote feedback.

mod c45;
mod labels;
mod rank;
mod votes;

use std::path::Path;

pub use c45::*;
pub use labels::*;
pub use rank::*;
pub use votes::*;

#[derive(Debug, thiserror::Error)]
pub enum RankError {
    #[error("training dataset is empty")]
    EmptyDataset,
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("k must be positive")]
    InvalidK,
    #[error("unknown person `{0}`")]
    UnknownPerson(String),
    #[error("vote delta must be +1 or -1, got {0}")]
    InvalidDelta(i64),
    #[error("invalid vote: {0}")]
    InvalidVote(String),
    #[error("model line {line}: {message}")]
    ModelParse { line: usize, message: String },
    #[error("{path}:{line}: {message}")]
    VoteLog {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl RankError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        RankError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
