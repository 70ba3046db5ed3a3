use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qhimpl_core::Error),
    #[error(transparent)]
    Numeric(#[from] qhimpl_numeric::NumError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 1 for anything that went wrong while computing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(qhimpl_core::Error::Internal(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Numeric(_) => 2,
            CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}
