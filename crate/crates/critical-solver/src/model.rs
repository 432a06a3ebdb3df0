//! Solving every chart of a model and merging the results in homogeneous
//! coordinates of the mirror.

use std::collections::BTreeMap;

use atlas_gluing::{compose, gr24_atlas, og15_atlas, Atlas, Transition};
use exact_algebra::{rf, var, RationalFunction, Var};
use gc_combinatorics::index_sets;
use num_complex::Complex64;
use plucker::{p_name, plucker_from_chart};
use potentials::{
    gr24_renaming, immersed_potential, og_potentials, og_t_powers, rietsch_gr, times_t, valuation_adjust, Model,
    Potential,
};
use serde::Serialize;

use crate::error::SolverError;
use crate::eval::eval_f64;
use crate::solve::{solve, CriticalPoint, SolveConfig};
use crate::system::critical_system;

/// A chart potential together with the homogeneous coordinates of the mirror
/// as functions on the chart.
#[derive(Clone, Debug)]
pub struct SolverChart {
    pub potential: Potential,
    /// Mirror coordinate name to expression in the chart variables; the
    /// last frozen coordinate is normalized to 1.
    pub to_model: BTreeMap<String, RationalFunction>,
}

/// `q` to the power `1/n`, with `n = 3` for OG(1,5).
pub fn t_from_q(model: Model, q: f64) -> Result<f64, SolverError> {
    if !(q.is_finite() && q > 0.0) {
        return Err(SolverError::NotPositive("q".into(), q));
    }
    let n = match model {
        Model::Gr2n(n) => n,
        Model::Og15 => 3,
        Model::Og14 => return Err(potentials::PotentialError::Unsupported(model.to_string()).into()),
    };
    Ok(q.powf(1.0 / n as f64))
}

fn rename_map(pairs: &[(&str, &str)]) -> BTreeMap<Var, RationalFunction> {
    pairs.iter().map(|(a, b)| (var(a), RationalFunction::var(b))).collect()
}

fn pulled(chart: &SolverChart, t: &Transition, name: &str, variables: &[String]) -> Result<SolverChart, SolverError> {
    let terms = chart.potential.terms.iter().map(|e| t.pull_back(e)).collect::<Result<Vec<_>, _>>()?;
    let to_model =
        chart.to_model.iter().map(|(k, e)| Ok((k.clone(), t.pull_back(e)?))).collect::<Result<_, SolverError>>()?;
    Ok(SolverChart {
        potential: Potential::from_terms(terms, name, variables.to_vec(), chart.potential.model),
        to_model,
    })
}

fn via_atlas(atlas: &Atlas, base: &SolverChart, name: &str, path: &[&str]) -> Result<SolverChart, SolverError> {
    let mut t = atlas.transition(path[0], path[1]).cloned().ok_or_else(|| missing(path[0], path[1]))?;
    for w in path[1..].windows(2) {
        let next = atlas.transition(w[0], w[1]).ok_or_else(|| missing(w[0], w[1]))?;
        t = compose(&t, next)?;
    }
    let vars = &atlas.chart(name).ok_or_else(|| missing(name, name))?.variables;
    pulled(base, &t, name, vars)
}

fn missing(a: &str, b: &str) -> SolverError {
    atlas_gluing::TransitionError::Missing(a.into(), b.into()).into()
}

fn gr_model_coords(n: u32, pairs: &[(u32, u32)]) -> Result<BTreeMap<String, RationalFunction>, SolverError> {
    Ok(plucker_from_chart(n, pairs)?.into_iter().map(|((i, j), e)| (p_name(i, j), e)).collect())
}

/// Gr(2,4) on the charts `L0`, `L1`, `L2`; `L0` is rescaled so that `q = T^4`,
/// and the tori are pulled back from it.
fn gr24_charts() -> Result<Vec<SolverChart>, SolverError> {
    let back: Vec<(&str, &str)> = gr24_renaming().iter().map(|(a, b)| (*b, *a)).collect();
    let back = rename_map(&back);
    let w = immersed_potential(4, &[(1, 2)])?;
    let terms = w.terms.iter().map(|t| t.substitute(&back)).collect::<Result<Vec<_>, _>>()?;
    let vars: Vec<String> = ["u", "v", "z0", "w0"].iter().map(|s| s.to_string()).collect();
    let to_model = gr_model_coords(4, &[(1, 2)])?
        .into_iter()
        .map(|(k, e)| Ok((k, e.substitute(&back)?)))
        .collect::<Result<_, SolverError>>()?;
    let l0 = SolverChart { potential: Potential::from_terms(terms, "L0", vars, Model::Gr2n(4)), to_model };
    let atlas = gr24_atlas();
    let l1 = via_atlas(&atlas, &l0, "L1", &["L1", "L0"])?;
    let l2 = via_atlas(&atlas, &l0, "L2", &["L2", "L0"])?;
    Ok(vec![l0, l1, l2])
}

/// Gr(2,n), n >= 5, on the torus and every immersed chart.
fn gr2n_charts(n: u32) -> Result<Vec<SolverChart>, SolverError> {
    let (all, _) = index_sets(n);
    all.iter()
        .map(|s| Ok(SolverChart { potential: immersed_potential(n, s)?, to_model: gr_model_coords(n, s)? }))
        .collect()
}

/// OG(1,5) on `L0`, `L1`, `L2`, `L2'`, with `q = T^3` carried by `L0`.
fn og15_charts() -> Result<Vec<SolverChart>, SolverError> {
    let og = og_potentials();
    let scaled = times_t(&valuation_adjust(&og.l0, &og_t_powers()), 1);
    let to_model: BTreeMap<String, RationalFunction> =
        [("p0", "z0"), ("p1", "v*z0"), ("p2", "u"), ("p3", "1")].iter().map(|(k, e)| (k.to_string(), rf(e))).collect();
    let l0 = SolverChart { potential: scaled, to_model };
    let atlas = og15_atlas();
    let l1 = via_atlas(&atlas, &l0, "L1", &["L1", "L0"])?;
    let l2 = via_atlas(&atlas, &l0, "L2", &["L2", "L0"])?;
    let l2p = via_atlas(&atlas, &l0, "L2'", &["L2'", "L2", "L0"])?;
    Ok(vec![l0, l1, l2, l2p])
}

pub fn model_charts(model: Model) -> Result<Vec<SolverChart>, SolverError> {
    match model {
        Model::Gr2n(4) => gr24_charts(),
        Model::Gr2n(n) => gr2n_charts(n),
        Model::Og15 => og15_charts(),
        Model::Og14 => Err(potentials::PotentialError::Unsupported(model.to_string()).into()),
    }
}

/// The mirror potential in homogeneous coordinates.
pub fn mirror_potential(model: Model) -> Result<RationalFunction, SolverError> {
    match model {
        Model::Gr2n(n) => Ok(rietsch_gr(n)?.expr),
        Model::Og15 => Ok(og_potentials().rietsch.expr),
        Model::Og14 => Err(potentials::PotentialError::Unsupported(model.to_string()).into()),
    }
}

/// Number of critical points predicted by the rank of quantum cohomology,
/// where the tool asserts one.
pub fn expected_count(model: Model) -> Option<usize> {
    match model {
        Model::Gr2n(4) => Some(6),
        Model::Og15 => Some(4),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSolve {
    pub chart: String,
    pub variables: Vec<String>,
    pub points: Vec<CriticalPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelPoint {
    /// Homogeneous coordinates of the mirror, normalized.
    pub coords: BTreeMap<String, Complex64>,
    pub value: Complex64,
    /// The mirror potential at `coords`; agrees with `value`.
    pub mirror_value: Complex64,
    pub residual: f64,
    pub charts: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelSolve {
    pub model: Model,
    pub q: f64,
    pub config: SolveConfig,
    pub charts: Vec<ChartSolve>,
    pub points: Vec<ModelPoint>,
    /// Chart points whose mirror coordinates could not be evaluated.
    pub unmapped: usize,
    pub expected_count: Option<usize>,
}

impl ModelSolve {
    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value).collect()
    }
}

fn model_distance(a: &BTreeMap<String, Complex64>, b: &BTreeMap<String, Complex64>) -> f64 {
    a.iter().map(|(k, z)| (z - b[k]).norm()).fold(0.0, f64::max)
}

/// Solve on every chart of `model` at `q`, then merge the chart solutions
/// in mirror coordinates.
pub fn solve_model(model: Model, q: f64, cfg: &SolveConfig) -> Result<ModelSolve, SolverError> {
    let t = t_from_q(model, q)?;
    let params: BTreeMap<String, f64> = [("T".to_string(), t), ("q".to_string(), q)].into_iter().collect();
    let mirror = mirror_potential(model)?;
    let mut charts = Vec::new();
    let mut points: Vec<ModelPoint> = Vec::new();
    let mut unmapped = 0;
    for chart in model_charts(model)? {
        let used: BTreeMap<String, f64> =
            params.iter().filter(|(k, _)| chart.potential.expr.contains_var(k)).map(|(k, v)| (k.clone(), *v)).collect();
        let sys = critical_system(&chart.potential, &used)?;
        let found = solve(&sys, cfg)?;
        for pt in &found {
            let coords: Option<BTreeMap<String, Complex64>> =
                chart.to_model.iter().map(|(k, e)| eval_f64(e, &pt.coords, &params).map(|z| (k.clone(), z))).collect();
            let Some(coords) = coords else {
                unmapped += 1;
                continue;
            };
            let name = chart.potential.chart.clone();
            match points.iter_mut().find(|m| model_distance(&m.coords, &coords) <= cfg.dedup_radius) {
                Some(m) => {
                    m.charts.push(name);
                    m.residual = m.residual.max(pt.residual);
                }
                None => {
                    let mirror_value = eval_f64(&mirror, &coords, &params).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                    points.push(ModelPoint { coords, value: pt.value, mirror_value, residual: pt.residual, charts: vec![name] });
                }
            }
        }
        charts.push(ChartSolve { chart: chart.potential.chart.clone(), variables: chart.potential.variables.clone(), points: found });
    }
    Ok(ModelSolve { model, q, config: cfg.clone(), charts, points, unmapped, expected_count: expected_count(model) })
}
