use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("singular substitution")]
    SingularSubstitution,
    #[error("non-invertible denominator at this valuation")]
    NonInvertibleDenominator,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("inexact division: {0}")]
    NotExact(String),
}
