use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Everything that can stop a pipeline run.
///
/// Row-level problems never surface here; they are dropped and counted in
/// the ingest reports. These variants are the fatal ones.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("i/o error: {0}")]
    Stream(#[from] io::Error),

    #[error("missing required column(s): {}", .0.join(", "))]
    MissingColumns(Vec<String>),

    #[error("duplicate column {0:?} in header")]
    DuplicateColumn(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("duplicate county FIPS {0} in SVI table")]
    DuplicateFips(String),

    #[error("unknown state code {0:?}")]
    UnknownState(String),

    #[error("invalid county name {0:?}")]
    InvalidName(String),

    #[error("cannot parse region {0:?}: expected \"<county>, <ST>\"")]
    RegionParse(String),

    #[error("empty input where at least one value is required")]
    EmptyDomain,

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("value {0} outside [0, 1]")]
    Domain(f64),

    #[error("no county matched between market and SVI data")]
    EmptyJoin,

    #[error("county {0} matches more than one record")]
    AmbiguousMatch(String),

    #[error("length mismatch: {0} vs {1}")]
    Shape(usize, usize),

    #[error("zero variance in {0}; correlation undefined")]
    DegenerateVariance(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// An I/O failure on a named file.
impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for this error.
    ///
    /// 1 usage, 2 I/O, 3 format, 4 join/empty, 5 degenerate statistics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::InvalidWeights(_) => 1,
            Error::Io { .. } | Error::Stream(_) => 2,
            Error::MissingColumns(_)
            | Error::DuplicateColumn(_)
            | Error::Format(_)
            | Error::DuplicateFips(_)
            | Error::UnknownState(_)
            | Error::InvalidName(_)
            | Error::RegionParse(_)
            | Error::NonFinite(_)
            | Error::Domain(_) => 3,
            Error::EmptyDomain | Error::EmptyJoin | Error::AmbiguousMatch(_) => 4,
            Error::Shape(..) | Error::DegenerateVariance(_) => 5,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        if err.is_io_error() {
            match err.into_kind() {
                csv::ErrorKind::Io(e) => Error::Stream(e),
                _ => unreachable!(),
            }
        } else {
            Error::Format(err.to_string())
        }
    }
}
