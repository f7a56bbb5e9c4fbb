use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LifeError {
    #[error("seed of {rows}x{cols} does not fit a half arena of width {half_width} and height {height}")]
    SeedTooLarge {
        rows: usize,
        cols: usize,
        half_width: usize,
        height: usize,
    },
    #[error("malformed arena text: {0}")]
    MalformedArena(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenomeError {
    #[error("parents differ in shape: {a:?} vs {b:?}")]
    DimensionMismatch { a: (usize, usize), b: (usize, usize) },
    #[error("malformed seed text: {0}")]
    MalformedSeed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RleError {
    #[error("malformed RLE: {0}")]
    Malformed(String),
    #[error("unsupported rule `{0}` (only B3/S23)")]
    UnsupportedRule(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("sample needs at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("samples have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("sample is constant")]
    ConstantSample,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("config key `{key}`: {reason}")]
pub struct ConfigError {
    pub key: String,
    pub reason: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

/// Top-level error for the experiment pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} already exists; refusing to overwrite a run directory")]
    OutputExists { path: PathBuf },
    #[error("unknown individual {0}")]
    UnknownIndividual(u64),
    #[error("no archive found under {0}")]
    MissingArchive(PathBuf),
    #[error("{path}: malformed CSV: {reason}")]
    MalformedCsv { path: PathBuf, reason: String },
    #[error(transparent)]
    Life(#[from] LifeError),
    #[error(transparent)]
    Genome(#[from] GenomeError),
    #[error(transparent)]
    Rle(#[from] RleError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 config, 2 I/O, 3 data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Io { .. } | Error::OutputExists { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
