use thiserror::Error;

/// Errors produced by cone construction, model loading and invariant
/// computations.
///
/// `Precondition` and `DimensionMismatch` signal contract violations by the
/// caller; `ModelIntegrity` and `Load` signal defective model data and carry
/// enough context to locate the offending field.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("zero vector is not a valid ray")]
    ZeroRay,

    #[error("cone contains a line (not pointed); generators {0}")]
    ContainsLine(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point lies outside the function domain: {0}")]
    OutsideDomain(String),

    #[error("model integrity: {0}")]
    ModelIntegrity(String),

    #[error("load error at {location}: {message}")]
    Load { location: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn model(msg: impl Into<String>) -> Self {
        Error::ModelIntegrity(msg.into())
    }

    pub fn load(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Load {
            location: location.into(),
            message: message.into(),
        }
    }
}
