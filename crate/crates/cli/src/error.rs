use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: drumzeta::Error,
    },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Compute { .. } => "compute",
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute { .. } => 3,
            _ => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches the name of the failing step to core errors.
pub trait Context<T> {
    fn ctx(self, what: &str) -> CliResult<T>;
}

impl<T> Context<T> for drumzeta::Result<T> {
    fn ctx(self, what: &str) -> CliResult<T> {
        self.map_err(|source| CliError::Compute { context: what.to_string(), source })
    }
}

pub fn config<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Config(msg.into()))
}
