use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("not symplectic: {0}")]
    NotSymplectic(String),

    #[error("not in the theta group: {0}")]
    NotThetaGroup(String),

    #[error("matrices are not proportional: {0}")]
    NotProportional(String),

    #[error("not a root of unity: {0}")]
    NotRootOfUnity(String),

    #[error("degenerate bilinear form: {0}")]
    Degenerate(String),

    #[error("search space too large: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
