use std::collections::BTreeMap;

use exact_algebra::{var, RationalFunction, Var};
use plucker::{equal_mod_plucker, geometric_to_plucker, PluckerExpression};
use serde::Serialize;

use crate::error::PotentialError;
use crate::gr::{gr24_chart_potentials, gr24_renaming, immersed_potential};
use crate::og::{og_potentials, og_rietsch_bindings, og_t_powers};
use crate::rietsch::{rietsch_gr, rietsch_restrict};
use crate::valuation::{t_to_q, times_t, valuation_adjust};
use crate::Model;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub model: Model,
    pub pairs: Vec<(u32, u32)>,
    /// Chart potential before substitution.
    pub chart_potential: String,
    /// After the Plucker bindings and `q = T^n`.
    pub substituted: String,
    /// The Rietsch potential, restricted to the chart when one is given.
    pub target: String,
    /// For Gr(2,4) only: the rescaled `L0` potential agrees with the
    /// immersed potential of `{(1,2)}`.
    pub l0_matches_immersed: Option<bool>,
    pub holds: bool,
}

/// `T * W_L0(T^-1 u, T v, T^-2 z0, T^-2 w0)`, renamed to the immersed chart.
pub fn gr24_l0_rescaled() -> RationalFunction {
    let [l0, _, _] = gr24_chart_potentials();
    let tmap: BTreeMap<Var, i32> = [("u", -1), ("v", 1), ("z0", -2), ("w0", -2)].iter().map(|(k, e)| (var(k), *e)).collect();
    let scaled = times_t(&valuation_adjust(&l0, &tmap), 1);
    let rename: BTreeMap<Var, RationalFunction> =
        gr24_renaming().iter().map(|(a, b)| (var(a), RationalFunction::var(b))).collect();
    scaled.expr.substitute(&rename).expect("renaming")
}

/// Check that a chart potential becomes the Rietsch potential under the
/// Plucker bindings with `q = T^n` (or `q = T^3` for OG(1,5)).
pub fn verify_rietsch_identity(model: Model, pairs: &[(u32, u32)]) -> Result<IdentityReport, PotentialError> {
    match model {
        Model::Gr2n(n) => {
            let w = immersed_potential(n, pairs)?;
            let b = geometric_to_plucker(n, pairs)?;
            let s = t_to_q(&w.expr.substitute(&b.bindings)?, b.q_power)?;
            let target = rietsch_restrict(n, pairs)?;
            let lhs = PluckerExpression::new(s.clone(), n)?;
            let holds = equal_mod_plucker(&lhs, &rietsch_gr(n)?)? && equal_mod_plucker(&lhs, &target)?;
            let l0 = (n == 4 && b.pairs == [(1, 2)]).then(|| gr24_l0_rescaled().equal(&w.expr));
            Ok(IdentityReport {
                model,
                pairs: b.pairs.clone(),
                chart_potential: w.expr.to_string(),
                substituted: s.to_string(),
                target: target.expr.to_string(),
                l0_matches_immersed: l0,
                holds: holds && l0.unwrap_or(true),
            })
        }
        Model::Og15 => {
            let og = og_potentials();
            let scaled = times_t(&valuation_adjust(&og.l0, &og_t_powers()), 1);
            let s = t_to_q(&scaled.expr.substitute(&og_rietsch_bindings())?, 3)?;
            Ok(IdentityReport {
                model,
                pairs: Vec::new(),
                chart_potential: og.l0.expr.to_string(),
                substituted: s.to_string(),
                target: og.rietsch.expr.to_string(),
                l0_matches_immersed: None,
                holds: s.equal(&og.rietsch.expr),
            })
        }
        Model::Og14 => Err(PotentialError::Unsupported(model.to_string())),
    }
}
