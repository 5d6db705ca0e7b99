use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate document id `{0}`")]
    DuplicateDocId(String),

    #[error("unknown document `{0}`")]
    UnknownDocument(String),

    #[error("invalid sentence spans for document `{doc_id}`: {reason}")]
    InvalidSpans { doc_id: String, reason: String },

    #[error("topic {topic}: sentence `{sent_id}` is labeled relevant but its document is not relevant")]
    QrelsConflict { topic: String, sent_id: String },

    #[error("training set has no {0} examples")]
    MissingClass(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty topic statement for topic `{0}`")]
    EmptyTopicStatement(String),

    #[error("unknown strategy code `{0}` (expected three of d/s, e.g. `sdd`)")]
    UnknownStrategy(String),

    #[error("invalid budget expression `{0}` (expected `aR+b` or an integer)")]
    InvalidBudget(String),

    #[error("topic `{0}` has no relevant documents, recall is undefined")]
    NoRelevant(String),

    #[error("need at least 2 paired samples, got {0}")]
    TooFewSamples(usize),

    #[error("paired samples differ in length ({0} vs {1})")]
    UnpairedSamples(usize, usize),

    #[error("topics without qrels: {}", .0.join(", "))]
    OrphanTopics(Vec<String>),

    #[error("topic {topic}, strategy {strategy}: {source}")]
    InRun {
        topic: String,
        strategy: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by how the tool was invoked rather than by the
    /// data it was pointed at.
    pub fn is_usage(&self) -> bool {
        if let Error::InRun { source, .. } = self {
            return source.is_usage();
        }
        matches!(
            self,
            Error::UnknownStrategy(_) | Error::InvalidBudget(_) | Error::InvalidParameter(_)
        )
    }
}
