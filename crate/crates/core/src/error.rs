use alloc::string::String;

use crate::Signature;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("grade {grade} out of range for n = {n}")]
    GradeOutOfRange { grade: usize, n: usize },

    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("element is not invertible")]
    NotInvertible,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sampling {what} failed after {attempts} attempts")]
    SamplingFailed { what: String, attempts: usize },

    #[error("matrix data: {0}")]
    MatrixData(String),
}

impl Error {
    pub(crate) fn mismatch(left: Signature, right: Signature) -> Self {
        Error::SignatureMismatch { left, right }
    }
}
