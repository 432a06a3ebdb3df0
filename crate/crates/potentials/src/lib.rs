//! Constructors for the superpotentials: the Gelfand-Cetlin torus, immersed
//! charts of Gr(2,n), the Gr(2,4) and OG(1,5) local charts, and Rietsch
//! potentials with their cluster restrictions.

pub mod error;
pub mod gr;
pub mod og;
pub mod rietsch;
pub mod valuation;
pub mod verify;

use std::fmt;

use exact_algebra::RationalFunction;
use serde::{Serialize, Serializer};

pub use error::PotentialError;
pub use gr::{gc_torus_potential, gr24_chart_potentials, gr24_renaming, immersed_potential};
pub use og::{og_bridge, og_bridge_inverse, og_potentials, og_rietsch_bindings, og_t_powers, OgPotentials};
pub use rietsch::{rietsch_cluster, rietsch_gr, rietsch_restrict};
pub use valuation::{inverse_map, t_to_q, times_t, torus_valuation_map, valuation_adjust, valuation_adjust_expr};
pub use verify::{gr24_l0_rescaled, verify_rietsch_identity, IdentityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Gr2n(u32),
    Og15,
    Og14,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Gr2n(n) => write!(f, "Gr(2,{n})"),
            Model::Og15 => write!(f, "OG(1,5)"),
            Model::Og14 => write!(f, "OG(1,4)"),
        }
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A superpotential on one chart, kept both as a sum and term by term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub expr: RationalFunction,
    pub terms: Vec<RationalFunction>,
    pub chart: String,
    pub variables: Vec<String>,
    pub model: Model,
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialJson {
    pub model: Model,
    pub chart: String,
    pub variables: Vec<String>,
    pub expr: String,
}

impl Potential {
    pub fn from_terms(terms: Vec<RationalFunction>, chart: &str, variables: Vec<String>, model: Model) -> Self {
        let expr = terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t);
        Potential { expr, terms, chart: chart.to_string(), variables, model }
    }

    pub fn to_json(&self) -> PotentialJson {
        PotentialJson {
            model: self.model,
            chart: self.chart.clone(),
            variables: self.variables.clone(),
            expr: self.expr.to_string(),
        }
    }

    /// Terms joined with ` + `, in construction order.
    pub fn display_terms(&self) -> String {
        self.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
    }
}
