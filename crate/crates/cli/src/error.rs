use std::fmt;
use std::path::Path;

use capote::aspects::AspectError;
use capote::corpus::CorpusError;
use capote::crowdtruth::CrowdError;
use capote::model::ModelError;

/// Process exit codes. Stable contract for scripts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Validation = 1,
    Config = 2,
    Statistics = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Config, message)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::config(format!("{}: {e}", path.display()))
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Unreadable inputs are resource problems; malformed contents are
/// validation problems.
pub fn from_corpus(path: &Path, e: CorpusError) -> CliError {
    let kind = match e {
        CorpusError::Io { .. } | CorpusError::Config(_) | CorpusError::Transport { .. } => ExitKind::Config,
        _ => ExitKind::Validation,
    };
    CliError::new(kind, format!("{}: {e}", path.display()))
}

pub fn from_aspect(e: AspectError) -> CliError {
    CliError::config(e.to_string())
}

pub fn from_crowd(e: CrowdError) -> CliError {
    CliError::new(ExitKind::Statistics, e.to_string())
}

pub fn from_model(e: ModelError) -> CliError {
    let kind = match e {
        ModelError::Stats(_) | ModelError::Crowd(_) | ModelError::TooFewArticles(_) => ExitKind::Statistics,
        ModelError::MissingAspect(_) => ExitKind::Validation,
        ModelError::Kv(_) | ModelError::UnknownModel(_) | ModelError::NotAnAspectFit(_) | ModelError::Io { .. } => {
            ExitKind::Config
        }
    };
    CliError::new(kind, e.to_string())
}
