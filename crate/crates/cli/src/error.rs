use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] paving_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    /// Bad flag combination or config file; reported like a parse error.
    #[error("{0}")]
    Usage(String),

    #[error("witness failed re-validation: {0}")]
    Invalid(String),

    #[error("{0} of the verification checks failed")]
    Verify(usize),
}

impl CliError {
    /// 2 for malformed input, 3 for size-guard violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_parse() => 2,
            CliError::Core(e) if e.is_guard() => 3,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}
