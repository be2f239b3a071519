use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Two objects built for different `(n, L)` were combined.
    #[error(
        "dimension mismatch: expected n={expected_order}, L={expected_sites}, found n={found_order}, L={found_sites}"
    )]
    DimensionMismatch {
        expected_order: u32,
        expected_sites: usize,
        found_order: u32,
        found_sites: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {what} requires {required}, cap is {cap}")]
    Resource { what: String, required: u128, cap: u128 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
