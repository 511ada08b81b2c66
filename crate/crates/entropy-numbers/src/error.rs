use thiserror::Error;

/// Errors produced by the bound evaluators and constructive estimators.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed value (non-finite coordinate, bad ordering, bad sum, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A stated hypothesis of a bound or construction is violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured budget (centers, candidates, enumeration size) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
