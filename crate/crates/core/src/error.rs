use std::path::PathBuf;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: empty lexicon", path.display())]
    EmptyLexicon { path: PathBuf },

    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("transcript row {row}: {message}")]
    Transcript { row: usize, message: String },

    #[error("decision for unknown sentence {sentence}{}", document.as_ref().map(|d| format!(" in `{d}`")).unwrap_or_default())]
    UnknownSentence { document: Option<String>, sentence: usize },

    #[error("gold file names unknown sentence ids: {}", ids.join(", "))]
    UnknownGoldIds { ids: Vec<String> },

    #[error("{0}")]
    Config(String),

    #[error("interactive input: {0}")]
    Interactive(#[source] std::io::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

/// Pipeline stages, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Lexica,
    Input,
    Preprocess,
    Postag,
    Persons,
    Modality,
    Attitude,
    Report,
    Output,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Config => "config",
            Stage::Lexica => "lexica",
            Stage::Input => "input",
            Stage::Preprocess => "preprocess",
            Stage::Postag => "postag",
            Stage::Persons => "persons",
            Stage::Modality => "modality",
            Stage::Attitude => "attitude",
            Stage::Report => "report",
            Stage::Output => "output",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An error tagged with the stage that raised it.
#[derive(Debug, Error)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

pub(crate) trait AtStage<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}
