use exact_algebra::AlgebraError;
use gc_combinatorics::GcError;
use plucker::PluckerError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error(transparent)]
    Pairs(#[from] GcError),
    #[error(transparent)]
    Plucker(#[from] PluckerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("term {0} to be removed is missing from the torus potential")]
    MissingTerm(String),
    #[error("clearing p{0},{1} failed: {2}")]
    Clearing(u32, u32, String),
    #[error("T appears with exponent {0}, not a multiple of {1}")]
    FractionalQ(i32, u32),
    #[error("model {0} has no Rietsch identity")]
    Unsupported(String),
}
