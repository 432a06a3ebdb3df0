use atlas_gluing::TransitionError;
use exact_algebra::AlgebraError;
use plucker::PluckerError;
use potentials::PotentialError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("parameter {0} must be bound to a positive real, got {1}")]
    NotPositive(String, f64),
    #[error("variable {0} is neither a chart coordinate nor a bound parameter")]
    Unbound(String),
    #[error("no closed form is known for {0}")]
    NoClosedForm(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Plucker(#[from] PluckerError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
}
