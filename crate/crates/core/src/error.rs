//! Error type shared by every module of the crate.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty table")]
    EmptyTable,

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("rule references variable {variable} but the sample has {n_features} features")]
    MissingVariable { variable: usize, n_features: usize },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("rule base is empty")]
    EmptyRuleBase,

    #[error("need at least {needed} classes, found {found}")]
    TooFewClasses { needed: usize, found: usize },

    #[error("class {class} has {count} samples, at least {needed} required")]
    TooFewSamples {
        class: String,
        count: usize,
        needed: usize,
    },

    #[error("empty corpus: no document yields a retained token")]
    EmptyCorpus,

    #[error("invalid heatmap: {0}")]
    InvalidHeatmap(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
