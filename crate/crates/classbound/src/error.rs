use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] classbound_core::Error),
    #[error("unknown lemma identifier {0:?}")]
    UnknownLemma(String),
    #[error("unknown format {0:?}, expected json or csv")]
    UnknownFormat(String),
    #[error("invalid value for CLASSBOUND_CAP: {0:?}")]
    BadCap(String),
}
