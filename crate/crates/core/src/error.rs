use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("random generation gave up after {attempts} attempts")]
    RetryExhausted { attempts: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("edge ({tail}, {head}) has a zero polarization estimate")]
    ZeroEdge { tail: usize, head: usize },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("matrix is rank deficient (smallest singular value {sigma_min:e})")]
    RankDeficient { sigma_min: f64 },

    #[error("unrecoverable instance at stage `{stage}`: {reason}")]
    Unrecoverable { stage: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot access {}", path.display())]
    File { path: std::path::PathBuf, source: std::io::Error },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
