use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("floating-point overflow while computing {0}")]
    Overflow(String),
    #[error("unsupported discrete order: {0}")]
    UnsupportedK(String),
    #[error("rectangle too small: {0}")]
    Margin(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("series does not terminate inside the truncation rectangle: {0}")]
    NotTerminating(String),
    #[error("invalid operator application: {0}")]
    InvalidOp(String),
    #[error("series exponents differ by a non-integer: {0}")]
    IncomparableExponents(String),
    #[error("eigenvalue iteration did not converge: {0}")]
    Convergence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
