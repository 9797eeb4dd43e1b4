use thiserror::Error;

/// Errors raised by loading, computing, and diagnosing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("missing column `{column}` in header")]
    MissingColumn { column: String },

    #[error("row {row}, column `{column}`: {message}")]
    Load {
        row: u64,
        column: String,
        message: String,
    },

    #[error("duplicate key {key} at row {row}")]
    DuplicateKey { key: String, row: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("coverage error: {0}")]
    Coverage(String),

    #[error("{kind} shares for year {year} sum to {sum}, outside [0.999, 1.001]")]
    Normalization { year: i32, kind: String, sum: f64 },

    #[error("log-domain error: `{item}` has non-positive value in year {year}")]
    LogDomain { item: String, year: i32 },

    #[error("composition change: `{item}` carries a nonzero share but is missing in year {year}")]
    CompositionChange { item: String, year: i32 },

    #[error("data inconsistency: {0}")]
    DataInconsistency(String),

    #[error("undefined index: {0}")]
    UndefinedIndex(String),

    #[error("lookup error: {0}")]
    Lookup(String),

    #[error("cycle detected at back edge {from} -> {to}")]
    Cycle { from: String, to: String },

    #[error("node `{node}` references unknown node `{target}`")]
    Reference { node: String, target: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("node `{node}` references indicator `{indicator}` not declared in the manifest")]
    Manifest { node: String, indicator: String },

    #[error("missing indicator `{0}`")]
    MissingIndicator(String),

    #[error("indicator `{0}` is a series where a scalar is expected")]
    IndicatorType(String),

    #[error("indicator `{indicator}` has units `{found}`, manifest expects `{expected}`")]
    Units {
        indicator: String,
        expected: String,
        found: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
