//! Debate data model and corpus ingestion.
//!
//! Corpora are JSON Lines files (one debate per line); crowd annotations are
//! CSV files with one row per (worker, article) pair. Timestamps travel as
//! RFC 3339 strings and are held internally as Unix seconds.

mod annotations;
mod guardian;
mod jsonl;

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub use annotations::{load_annotations, read_annotations, write_annotations, ANNOTATION_HEADER};
pub use guardian::{
    fetch_articles, strip_tags, DateRange, GuardianClient, HttpGet, HttpResponse, API_KEY_ENV,
    DEFAULT_BASE_URL,
};
#[cfg(feature = "http")]
pub use guardian::UreqTransport;
pub use jsonl::{
    format_timestamp, load_corpus, parse_timestamp, read_corpus, serialize_debate, validate_corpus,
    write_corpus, CorpusValidation, LineError,
};

/// Unix seconds, UTC.
pub type Timestamp = i64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    /// Empty for anonymous authors.
    pub author: String,
    pub text: String,
    pub created_at: Timestamp,
    /// Index of an earlier comment in the same debate.
    pub reply_to: Option<usize>,
}

/// One article plus its comment thread: the unit of scoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Debate {
    pub id: String,
    pub title: String,
    pub body: String,
    pub published_at: Timestamp,
    pub source: String,
    pub comments: Vec<Comment>,
    pub comments_public: bool,
}

impl Debate {
    /// A debate with no text, no comments and the given id and source.
    pub fn empty(id: impl Into<String>, source: impl Into<String>, published_at: Timestamp) -> Self {
        Debate {
            id: id.into(),
            title: String::new(),
            body: String::new(),
            published_at,
            source: source.into(),
            comments: Vec::new(),
            comments_public: false,
        }
    }

    /// Article timestamp followed by every comment timestamp.
    pub fn timestamps(&self) -> impl Iterator<Item = Timestamp> + '_ {
        std::iter::once(self.published_at).chain(self.comments.iter().map(|c| c.created_at))
    }
}

/// The six crowd questions, in file-column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Question {
    Controversy,
    Actors,
    Polarity,
    Openness,
    Time,
    Emotion,
}

impl Question {
    pub const ALL: [Question; 6] = [
        Question::Controversy,
        Question::Actors,
        Question::Polarity,
        Question::Openness,
        Question::Time,
        Question::Emotion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Question::Controversy => "controversy",
            Question::Actors => "actors",
            Question::Polarity => "polarity",
            Question::Openness => "openness",
            Question::Time => "time",
            Question::Emotion => "emotion",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One worker's binary answers for one article.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationSet {
    pub worker_id: String,
    pub article_id: String,
    pub answers: [bool; 6],
}

impl AnnotationSet {
    pub fn new(worker_id: impl Into<String>, article_id: impl Into<String>, answers: [bool; 6]) -> Self {
        AnnotationSet {
            worker_id: worker_id.into(),
            article_id: article_id.into(),
            answers,
        }
    }

    pub fn answer(&self, q: Question) -> bool {
        self.answers[q.index()]
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: duplicate debate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("annotations: {0}")]
    Header(String),
    #[error("row {row}: {message}")]
    Row { row: u64, message: String },
    #[error("row {row}: duplicate annotation for worker `{worker_id}` on article `{article_id}`")]
    DuplicateAnnotation {
        row: u64,
        worker_id: String,
        article_id: String,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("transport error{}: {message}", status.map(|s| format!(" (HTTP {s})")).unwrap_or_default())]
    Transport { status: Option<u16>, message: String },
    #[error("malformed API response: {0}")]
    Response(String),
}

impl CorpusError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CorpusError::Io { path: path.into(), source }
    }
}
