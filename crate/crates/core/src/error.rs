use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument value was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was asked to exceed a configured resource cap.
    #[error("resource cap exceeded: {what} requested {requested}, cap {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// Two partitions that must partition the same integer do not.
    #[error("size mismatch: |lambda| = {lhs} but |mu| = {rhs}")]
    SizeMismatch { lhs: u64, rhs: u64 },

    /// An operation required a table in a different mode (exact vs mod-p).
    #[error("table mode mismatch: {0}")]
    ModeMismatch(&'static str),

    /// I/O failure, annotated with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input encountered while parsing (CLI arguments, cached CSV).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
