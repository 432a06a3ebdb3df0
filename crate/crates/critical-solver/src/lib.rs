//! Critical points of the chart potentials by multi-start Newton, merged over
//! an atlas and checked against the closed forms for Gr(2,4) and OG(1,5).

pub mod error;
pub mod eval;
pub mod known;
pub mod model;
pub mod solve;
pub mod system;

pub use error::SolverError;
pub use known::{known_points, known_values, match_table, multiset_match, verify_known, KnownReport, MatchRow};
pub use model::{expected_count, mirror_potential, model_charts, solve_model, t_from_q, ChartSolve, ModelPoint, ModelSolve, SolverChart};
pub use solve::{solve, CriticalPoint, SolveConfig};
pub use system::{critical_system, PolySystem};
