use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: invalid UTF-8 at byte offset {offset}", path.display())]
    InvalidUtf8 { path: PathBuf, offset: usize },

    #[error("{}:{line}: {reason}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("invalid token {0:?}: tokens must be non-empty and free of whitespace")]
    InvalidToken(String),

    #[error("cannot segment an empty word")]
    EmptyWord,

    #[error("sentence count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sentence {sentence}: {tokens} tokens but {tags} POS tags")]
    TagMismatch {
        sentence: usize,
        tokens: usize,
        tags: usize,
    },

    #[error("mode {mode} requires a {resource}")]
    MissingResource {
        mode: &'static str,
        resource: &'static str,
    },

    #[error("invalid marker {0:?}: must be non-empty and free of whitespace")]
    InvalidMarker(String),

    #[error("sentence {sentence}: token {token:?} already ends with the marker")]
    MarkerCollision { sentence: usize, token: String },

    #[error("sentence {sentence}: marker on the final token has nothing to join")]
    DanglingMarker { sentence: usize },

    #[error("hypothesis corpus contains no tokens")]
    EmptyHypothesis,

    #[error("reference sentence {0} is empty")]
    EmptyReference(usize),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
