use std::collections::BTreeMap;

use exact_algebra::{rf, var, AlgebraError, RationalFunction, Var};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error("cannot compose {0}->{1} with {2}->{3}")]
    Mismatch(String, String, String, String),
    #[error("no transition {0}->{1}")]
    Missing(String, String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pairs(#[from] gc_combinatorics::GcError),
    #[error(transparent)]
    Potential(#[from] potentials::PotentialError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub name: String,
    pub variables: Vec<String>,
    /// Valuation constraints, kept as metadata.
    pub domain_notes: String,
}

impl Chart {
    pub fn new(name: &str, variables: &[&str], domain_notes: &str) -> Self {
        Chart {
            name: name.to_string(),
            variables: variables.iter().map(|s| s.to_string()).collect(),
            domain_notes: domain_notes.to_string(),
        }
    }
}

/// A map from `source` to `target`: each target variable as a function of
/// the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub source: String,
    pub target: String,
    pub bindings: BTreeMap<Var, RationalFunction>,
    /// Functions of the source variables that must not vanish.
    pub constraints: Vec<RationalFunction>,
}

impl Transition {
    pub fn new(source: &str, target: &str, bindings: &[(&str, &str)], constraints: &[&str]) -> Self {
        Transition {
            source: source.to_string(),
            target: target.to_string(),
            bindings: bindings.iter().map(|(k, v)| (var(k), rf(v))).collect(),
            constraints: constraints.iter().map(|c| rf(c)).collect(),
        }
    }

    pub fn identity(chart: &Chart) -> Self {
        Transition {
            source: chart.name.clone(),
            target: chart.name.clone(),
            bindings: chart.variables.iter().map(|v| (var(v), RationalFunction::var(v))).collect(),
            constraints: Vec::new(),
        }
    }

    /// Pull a function on the target back to the source.
    pub fn pull_back(&self, f: &RationalFunction) -> Result<RationalFunction, AlgebraError> {
        f.substitute(&self.bindings)
    }

    /// Variables of the first map that agree with the second as rational functions.
    pub fn agrees_with(&self, other: &Transition) -> Vec<(Var, bool)> {
        let keys: std::collections::BTreeSet<&Var> = self.bindings.keys().chain(other.bindings.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let same = match (self.bindings.get(k), other.bindings.get(k)) {
                    (Some(a), Some(b)) => a.equal(b),
                    (Some(a), None) | (None, Some(a)) => a.equal(&RationalFunction::var(k)),
                    (None, None) => true,
                };
                (k.clone(), same)
            })
            .collect()
    }
}

/// `t2 . t1`: first `t1`, then `t2`.
pub fn compose(t1: &Transition, t2: &Transition) -> Result<Transition, TransitionError> {
    if t1.target != t2.source {
        return Err(TransitionError::Mismatch(
            t1.source.clone(),
            t1.target.clone(),
            t2.source.clone(),
            t2.target.clone(),
        ));
    }
    let mut bindings = BTreeMap::new();
    for (k, v) in &t2.bindings {
        bindings.insert(k.clone(), t1.pull_back(v)?);
    }
    let mut constraints = t1.constraints.clone();
    for c in &t2.constraints {
        constraints.push(t1.pull_back(c)?);
    }
    Ok(Transition { source: t1.source.clone(), target: t2.target.clone(), bindings, constraints })
}

/// The six directed wall-crossing maps among `L0 = (u, v)`, `L1 = (x1, y1)`
/// and `L2 = (x2, y2)`.
pub fn local_transitions() -> Vec<Transition> {
    vec![
        Transition::new("L0", "L1", &[("x1", "u*v - 1"), ("y1", "u")], &["u"]),
        Transition::new("L1", "L0", &[("u", "y1"), ("v", "(x1 + 1)/y1")], &["x1", "y1"]),
        Transition::new("L0", "L2", &[("x2", "u*v - 1"), ("y2", "1/v")], &["v"]),
        Transition::new("L2", "L0", &[("u", "(x2 + 1)*y2"), ("v", "1/y2")], &["x2", "y2"]),
        Transition::new("L2", "L1", &[("x1", "x2"), ("y1", "y2*(1 + x2)")], &["x2 + 1", "y2"]),
        Transition::new("L1", "L2", &[("x2", "x1"), ("y2", "y1/(1 + x1)")], &["x1 + 1", "y1"]),
    ]
}

/// `u -> (1 - uv)^k u`, `v -> (1 - uv)^{-k} v` on a chart with variables `u`, `v`.
pub fn gauge_automorphism_on(chart: &str, u: &str, v: &str, k: i32) -> Transition {
    let wall = &RationalFunction::one() - &(&RationalFunction::var(u) * &RationalFunction::var(v));
    let bindings = [
        (var(u), &wall.pow(k).expect("nonzero base") * &RationalFunction::var(u)),
        (var(v), &wall.pow(-k).expect("nonzero base") * &RationalFunction::var(v)),
    ]
    .into_iter()
    .collect();
    Transition { source: chart.into(), target: chart.into(), bindings, constraints: vec![wall] }
}

pub fn gauge_automorphism(k: i32) -> Transition {
    gauge_automorphism_on("L0", "u", "v", k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(ts: &[Transition], s: &str, t: &str) -> Transition {
        ts.iter().find(|x| x.source == s && x.target == t).unwrap().clone()
    }

    #[test]
    fn composition_recovers_the_direct_map() {
        let ts = local_transitions();
        let c = compose(&find(&ts, "L1", "L0"), &find(&ts, "L0", "L2")).unwrap();
        assert!(c.agrees_with(&find(&ts, "L1", "L2")).iter().all(|(_, ok)| *ok));
        let c = compose(&find(&ts, "L2", "L0"), &find(&ts, "L0", "L1")).unwrap();
        assert_eq!(c.bindings[&var("x1")], rf("x2"));
        assert!(c.bindings[&var("y1")].equal(&rf("y2*(1 + x2)")));
        assert!(compose(&find(&ts, "L1", "L0"), &find(&ts, "L1", "L2")).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let ts = local_transitions();
        let t = find(&ts, "L0", "L2");
        let id = Transition::identity(&Chart::new("L2", &["x2", "y2"], ""));
        assert_eq!(compose(&t, &id).unwrap().bindings, t.bindings);
    }

    #[test]
    fn slice_v_zero() {
        let t = find(&local_transitions(), "L0", "L1");
        let at = [(var("v"), RationalFunction::zero())].into_iter().collect();
        assert_eq!(t.bindings[&var("x1")].substitute(&at).unwrap(), rf("-1"));
    }

    #[test]
    fn uv_in_terms_of_l2() {
        let t = find(&local_transitions(), "L2", "L0");
        assert!(t.pull_back(&rf("u*v")).unwrap().equal(&rf("1 + x2")));
    }

    #[test]
    fn gauge() {
        assert!(gauge_automorphism(0).agrees_with(&Transition::identity(&Chart::new("L0", &["u", "v"], ""))).iter().all(|x| x.1));
        for k in -3..=3 {
            let g = gauge_automorphism(k);
            assert!(g.pull_back(&rf("u*v")).unwrap().equal(&rf("u*v")));
            let back = compose(&g, &gauge_automorphism(-k)).unwrap();
            assert!(back.bindings[&var("u")].equal(&rf("u")) && back.bindings[&var("v")].equal(&rf("v")));
        }
    }
}
