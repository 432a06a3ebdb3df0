use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("the potential has a pole at the center ({0})")]
    Pole(String),
    #[error("center has {0} coordinates for {1} variables")]
    Dimension(usize, usize),
    #[error("center coordinate {0} is not a constant")]
    NotConstant(String),
    #[error("sum of (x_i - c_i) f_i differs from W - W(c) by {0}")]
    Decomposition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
