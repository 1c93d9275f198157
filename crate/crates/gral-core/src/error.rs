use thiserror::Error;

/// Errors raised by groupoid constructions.
///
/// Structural errors (dangling identifiers, partial tables) are kept apart
/// from axiom failures, which are reported through validation reports
/// instead of `Err`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("size cap exceeded: {what} has at least {count} entries (cap {cap})")]
    SizeCap {
        what: String,
        count: usize,
        cap: usize,
    },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("capability absent: {0}")]
    Capability(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Mismatch(msg.into()))
}
