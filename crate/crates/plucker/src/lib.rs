//! Plucker coordinates on Gr(2,n): the three-term relations, identity checks
//! modulo the Plucker ideal, charts indexed by pair sets and their covering.

pub mod bindings;
pub mod coords;
pub mod covering;
pub mod error;
pub mod point;

pub use bindings::{geometric_to_plucker, plucker_from_chart, ChartBindings};
pub use coords::{
    dual_index, equal_mod_plucker, p, p_index, p_name, parametrize, plucker_relation, PluckerExpression,
};
pub use covering::{chart_membership, covering_certificate, covering_check, CertificateReport, CoveringReport};
pub use error::PluckerError;
pub use point::{random_point, GrassmannPoint, NumericPoint};
