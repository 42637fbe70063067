use std::io;
use std::path::PathBuf;

use syntree2vec_core::conllu::IngestError;
use syntree2vec_core::sgns::TrainError;
use syntree2vec_core::transition::TransitionError;

use crate::embeddings::EmbeddingFileError;
use crate::graph_file::GraphFileError;
use crate::walks_file::WalkFileError;

/// Process exit status of the command line tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Data = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Conllu { path: PathBuf, source: IngestError },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error(transparent)]
    Ingest(IngestError),
    #[error("{}: {source}", path.display())]
    GraphFile {
        path: PathBuf,
        source: GraphFileError,
    },
    #[error("{}: {source}", path.display())]
    WalkFile { path: PathBuf, source: WalkFileError },
    #[error("{}: {source}", path.display())]
    EmbeddingFile {
        path: PathBuf,
        source: EmbeddingFileError,
    },
    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("{0:?} is not in vocabulary")]
    NotInVocabulary(String),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl Error {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Error::Usage(_) | Error::Config { .. } => ExitCode::Usage,
            Error::Ingest(IngestError::ZeroMinCount) => ExitCode::Usage,
            Error::Transition(TransitionError::InvalidParam { .. }) => ExitCode::Usage,
            Error::Train(TrainError::InvalidConfig(_)) => ExitCode::Usage,
            _ => ExitCode::Data,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> Error {
        let path = path.into();
        move |source| Error::Io { path, source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
