use exact_algebra::AlgebraError;
use gc_combinatorics::GcError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PluckerError {
    #[error("indices must satisfy 1 <= i < j < k < l <= n, got {0:?} with n = {1}")]
    BadIndices(Vec<u32>, u32),
    #[error("variable {0} is not a Plucker coordinate for n = {1}")]
    ForeignVariable(String, u32),
    #[error("expressions live on different Grassmannians (n = {0} and n = {1})")]
    DimensionMismatch(u32, u32),
    #[error("expression undefined on Grassmannian")]
    Undefined,
    #[error("point lies on the divisor: p{0},{1} = 0")]
    OnDivisor(u32, u32),
    #[error("values violate the Plucker relation ({0},{1},{2},{3})")]
    NotOnGrassmannian(u32, u32, u32, u32),
    #[error("retry budget exhausted while sampling a point off the divisor")]
    RetryBudget,
    #[error(transparent)]
    Pairs(#[from] GcError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
