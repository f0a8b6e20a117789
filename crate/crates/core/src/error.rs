use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid array geometry: {0}")]
    InvalidGeometry(String),

    #[error("wavelength must be positive, got {0}")]
    InvalidWavelength(f64),

    #[error("invalid channel configuration: {0}")]
    InvalidChannel(String),

    #[error("distance must be positive, got {0} m")]
    InvalidDistance(f64),

    #[error("invalid codebook request: {0}")]
    InvalidCodebook(String),

    #[error("cluster {0} has no paths")]
    EmptyCluster(usize),

    #[error("invalid link configuration: {0}")]
    InvalidLink(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid pattern request: {0}")]
    InvalidPattern(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("grid point {point}: {source}")]
    GridPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error("nothing to emit: result set is empty")]
    EmptyResults,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
