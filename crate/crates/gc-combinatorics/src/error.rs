use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcError {
    #[error("n = {0} is outside the supported range 4..=14")]
    UnsupportedN(u32),
    #[error("({0},{1}) is not a consecutive pair inside the ladder")]
    BadPair(u32, u32),
    #[error("pairs share an integer")]
    OverlappingPairs,
    #[error("diagram is not Lagrangian")]
    NotLagrangian,
}
