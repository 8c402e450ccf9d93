use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported size: {what} = {got} exceeds the supported bound {max}")]
    UnsupportedSize {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two exact rules disagree, or a bound contradicts an exact value.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A structure theorem was observed to fail on a concrete coloring.
    #[error("structure theorem violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
