use std::path::PathBuf;

pub type JobResult<T> = Result<T, JobError>;

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] massprod_core::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl JobError {
    /// All errors are domain or usage errors for the exit-code contract.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
