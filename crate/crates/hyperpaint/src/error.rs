use std::path::{Path, PathBuf};

use crate::pnm::HeaderField;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed header ({field}): {reason}")]
    Header { field: HeaderField, reason: String },

    #[error("unsupported maxval {0} (only 255 is accepted)")]
    UnsupportedMaxval(usize),

    #[error("truncated payload: expected {expected} bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },

    #[error(transparent)]
    Core(#[from] hyperpaint_core::Error),
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
