use std::path::PathBuf;

/// Errors produced by the analysis toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid cell geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid mobility configuration: {0}")]
    InvalidMobility(String),

    #[error("invalid histogram: {0}")]
    InvalidHistogram(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate}, error {error_estimate:e})")]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("insufficient data: {found} trigger events, at least {required} required")]
    InsufficientData { found: usize, required: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
