use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quaternionic dimension {0} (must be >= 1 and 4n <= 64)")]
    InvalidDimension(usize),

    #[error("dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree overflow: {degree} exceeds the top degree {top}")]
    DegreeOverflow { degree: usize, top: usize },

    #[error("degree underflow: operator needs degree >= {min}, got {degree}")]
    DegreeUnderflow { degree: usize, min: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("degree {degree} is outside the theorem range (limit {limit}); pass force to override")]
    OutOfTheoremRange { degree: usize, limit: usize },

    #[error("normal equations are singular")]
    SingularNormalEquations,

    #[error("identity + s is not invertible")]
    SingularCayley,

    #[error("no single star-formula sign works in degree {degree}")]
    SignInconsistent { degree: usize },

    #[error("group order would exceed the bound {max_order}")]
    OrderExceeded { max_order: usize },

    #[error("group element {index} does not preserve the integer lattice")]
    LatticeViolation { index: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
