use thiserror::Error;

/// Errors surfaced by function construction, evaluation and the checkers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A query outside the domain a function is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration (grids, tolerances, window policies).
    #[error("config error: {0}")]
    Config(String),

    /// A non-finite value showed up where a finite one was required.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A constructed object violates one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// Malformed function descriptor or scenario text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Catalog lookup with an id that is not shipped.
    #[error("unknown catalog id: {0}")]
    UnknownCatalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
