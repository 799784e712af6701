use thiserror::Error;

/// Errors raised by graph construction, maps and verification helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Two vertices were expected to be adjacent and are not.
    #[error("vertices are not adjacent: {0}")]
    Relation(String),

    /// The graph does not carry what the operation needs (usually edge colors).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The inputs collapse to a trivial or excluded case.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A vertex map does not assign an image to every source vertex.
    #[error("vertex map is not total: source vertex {0} has no image")]
    NotTotal(usize),

    /// A closed-form count that must be an integer is not.
    #[error("non-integral value: {0}")]
    NonIntegral(String),

    /// Serialized input could not be decoded.
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
