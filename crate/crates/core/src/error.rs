use alloc::string::String;

/// Errors reported by the cone algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero normal vector is not a halfspace")]
    ZeroNormal,

    #[error("face index {0} is not a face of this cone")]
    NotAFace(usize),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
