use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pgrowth::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Net {
        path: String,
        source: pgrowth::Error,
    },

    #[error("geometric plots need rank at most 3, got {0}")]
    UnsupportedRank(usize),

    #[error("{0}")]
    Usage(String),
}
