use thiserror::Error;

use crate::algebra::BigRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroPolynomialDivision,
    #[error("division by zero rational function")]
    RatQDivisionByZero,
    #[error("pole at q = {0}")]
    Pole(BigRat),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
