use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::ParseError;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must agree in dimension do not.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// An argument violates a documented precondition.
    InvalidInput(String),
    /// A target function returned NaN or an infinity at a sample point.
    NonFiniteValue {
        point: Vec<f64>,
        value: f64,
    },
    /// Degree search exceeded the configured cap; the box should be split.
    DegreeCapExceeded {
        dim: usize,
        cap: usize,
    },
    /// Coefficients do not decay, so no geometric tail bound can be formed.
    UnreliableBound {
        dim: usize,
        rho: f64,
    },
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NonFiniteValue { point, value } => {
                write!(f, "function returned {value} at {point:?}")
            }
            Error::DegreeCapExceeded { dim, cap } => write!(
                f,
                "approximation did not converge in coordinate {dim} below degree {cap}; \
                 split the interval and try again"
            ),
            Error::UnreliableBound { dim, rho } => write!(
                f,
                "coefficients in coordinate {dim} show no geometric decay (rho = {rho}); \
                 raise the degree or split the interval"
            ),
            Error::Parse(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
