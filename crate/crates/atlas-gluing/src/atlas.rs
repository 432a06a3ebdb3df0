use std::collections::{BTreeMap, BTreeSet};

use exact_algebra::{var, RationalFunction};
use potentials::Potential;
use serde::Serialize;

use crate::transition::{compose, gauge_automorphism_on, Chart, Transition, TransitionError};

#[derive(Clone, Debug)]
pub struct Atlas {
    pub name: String,
    pub charts: Vec<Chart>,
    pub transitions: Vec<Transition>,
    pub potentials: BTreeMap<String, Potential>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub path: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub triangles: usize,
    pub round_trips: usize,
    pub failures: Vec<Failure>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    /// `(source, target, holds)` per transition.
    pub edges: Vec<(String, String, bool)>,
    pub failures: Vec<Failure>,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.edges.iter().all(|e| e.2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionJson {
    pub source: String,
    pub target: String,
    pub bindings: BTreeMap<String, String>,
    pub constraints: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasJson {
    pub name: String,
    pub charts: Vec<Chart>,
    pub transitions: Vec<TransitionJson>,
    pub potentials: BTreeMap<String, String>,
}

fn mismatches(composed: &Transition, direct: &Transition) -> Vec<String> {
    composed.agrees_with(direct).into_iter().filter(|(_, ok)| !ok).map(|(v, _)| v.to_string()).collect()
}

impl Atlas {
    pub fn new(name: &str, charts: Vec<Chart>, transitions: Vec<Transition>) -> Self {
        Atlas { name: name.to_string(), charts, transitions, potentials: BTreeMap::new() }
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }

    pub fn transition(&self, source: &str, target: &str) -> Option<&Transition> {
        self.transitions.iter().find(|t| t.source == source && t.target == target)
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.charts.first() else { return true };
        let mut seen: BTreeSet<&str> = [first.name.as_str()].into_iter().collect();
        let mut stack = vec![first.name.as_str()];
        while let Some(c) = stack.pop() {
            for t in &self.transitions {
                for (a, b) in [(&t.source, &t.target), (&t.target, &t.source)] {
                    if a == c && seen.insert(b.as_str()) {
                        stack.push(b.as_str());
                    }
                }
            }
        }
        seen.len() == self.charts.len()
    }

    /// Every directed triangle `A -> B -> C` with a direct `A -> C` must agree
    /// with the composite, and every `A -> B -> A` must be the identity.
    pub fn verify_cocycle(&self) -> CocycleReport {
        let mut report = CocycleReport { triangles: 0, round_trips: 0, failures: Vec::new() };
        for ab in &self.transitions {
            for bc in self.transitions.iter().filter(|t| t.source == ab.target) {
                let path = vec![ab.source.clone(), ab.target.clone(), bc.target.clone()];
                let direct = if bc.target == ab.source {
                    if ab.source == ab.target {
                        continue;
                    }
                    report.round_trips += 1;
                    match self.chart(&ab.source) {
                        Some(c) => Transition::identity(c),
                        None => {
                            report.failures.push(Failure { path, detail: "unknown chart".into() });
                            continue;
                        }
                    }
                } else if let Some(ac) = self.transition(&ab.source, &bc.target) {
                    if ab.source == ab.target || bc.source == bc.target {
                        continue;
                    }
                    report.triangles += 1;
                    ac.clone()
                } else {
                    continue;
                };
                match compose(ab, bc) {
                    Ok(c) => {
                        let bad = mismatches(&c, &direct);
                        if !bad.is_empty() {
                            report.failures.push(Failure { path, detail: format!("disagree on {}", bad.join(", ")) });
                        }
                    }
                    Err(e) => report.failures.push(Failure { path, detail: e.to_string() }),
                }
            }
        }
        report
    }

    /// `W_target` pulled back along each transition must equal `W_source`.
    pub fn verify_potential_transport(&self) -> TransportReport {
        let mut report = TransportReport { edges: Vec::new(), failures: Vec::new() };
        for t in &self.transitions {
            let path = vec![t.source.clone(), t.target.clone()];
            let (Some(ws), Some(wt)) = (self.potentials.get(&t.source), self.potentials.get(&t.target)) else {
                report.failures.push(Failure { path, detail: "missing potential".into() });
                continue;
            };
            match t.pull_back(&wt.expr) {
                Ok(p) => {
                    let ok = p.equal(&ws.expr);
                    report.edges.push((t.source.clone(), t.target.clone(), ok));
                    if !ok {
                        report.failures.push(Failure { path, detail: format!("{p} != {}", ws.expr) });
                    }
                }
                Err(e) => report.failures.push(Failure { path, detail: e.to_string() }),
            }
        }
        report
    }

    /// Copy with one binding replaced, for fault injection.
    pub fn with_binding(&self, source: &str, target: &str, v: &str, expr: RationalFunction) -> Result<Atlas, TransitionError> {
        let mut a = self.clone();
        let t = a
            .transitions
            .iter_mut()
            .find(|t| t.source == source && t.target == target)
            .ok_or_else(|| TransitionError::Missing(source.into(), target.into()))?;
        t.bindings.insert(var(v), expr);
        Ok(a)
    }

    /// Copy with one chart's potential replaced.
    pub fn with_potential(&self, chart: &str, expr: RationalFunction) -> Atlas {
        let mut a = self.clone();
        if let Some(p) = a.potentials.get_mut(chart) {
            p.terms = vec![expr.clone()];
            p.expr = expr;
        }
        a
    }

    /// Reparametrize the `(u, v)` coordinates of `chart` by the gauge map of
    /// weight `k`: incident transitions are conjugated and the potential is
    /// pulled back.
    pub fn gauge_conjugate(&self, chart: &str, u: &str, v: &str, k: i32) -> Result<Atlas, TransitionError> {
        let mut into = gauge_automorphism_on(chart, u, v, k);
        let mut out = gauge_automorphism_on(chart, u, v, -k);
        let c = self.chart(chart).ok_or_else(|| TransitionError::Missing(chart.into(), chart.into()))?;
        for x in c.variables.iter().filter(|x| *x != u && *x != v) {
            into.bindings.insert(var(x), RationalFunction::var(x));
            out.bindings.insert(var(x), RationalFunction::var(x));
        }
        let mut a = self.clone();
        for t in a.transitions.iter_mut() {
            if t.source == chart && t.target != chart {
                *t = compose(&into, t)?;
            } else if t.target == chart && t.source != chart {
                *t = compose(t, &out)?;
            }
        }
        if let Some(p) = a.potentials.get_mut(chart) {
            let pulled = into.pull_back(&p.expr)?;
            p.terms = p.terms.iter().map(|t| into.pull_back(t)).collect::<Result<_, _>>()?;
            p.expr = pulled;
        }
        a.name = format!("{} (gauge {k})", self.name);
        Ok(a)
    }

    pub fn to_json(&self) -> AtlasJson {
        AtlasJson {
            name: self.name.clone(),
            charts: self.charts.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionJson {
                    source: t.source.clone(),
                    target: t.target.clone(),
                    bindings: t.bindings.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                    constraints: t.constraints.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
            potentials: self.potentials.iter().map(|(k, p)| (k.clone(), p.expr.to_string())).collect(),
        }
    }
}

/// Potential with the given expression as a single term; used for charts
/// whose potential is obtained by transport.
pub(crate) fn lone(expr: RationalFunction, chart: &str, vars: &[String], model: potentials::Model) -> Potential {
    Potential::from_terms(vec![expr], chart, vars.to_vec(), model)
}
