//! Closed-form critical points of Gr(2,4) and OG(1,5) at `q = 1`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use exact_algebra::Var;
use num_complex::Complex64;
use plucker::geometric_to_plucker;
use potentials::{gr24_renaming, og_rietsch_bindings, Model};
use serde::Serialize;

use crate::error::SolverError;
use crate::eval::{eval_f64, to_complex};
use crate::model::{expected_count, model_charts, ModelSolve};
use crate::system::critical_system;

/// Tolerance on closed-form residuals.
pub const KNOWN_RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance on critical values and on matching solver output.
pub const VALUE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct KnownPoint {
    pub label: String,
    /// Homogeneous coordinates, normalized like the solver's.
    pub coords: BTreeMap<String, Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gr(pairs: &[((u32, u32), Complex64)]) -> BTreeMap<String, Complex64> {
    pairs.iter().map(|((i, j), z)| (format!("p{i},{j}"), *z)).collect()
}

/// The six points of Gr(2,4) and the four of OG(1,5), with `xi` a primitive
/// fourth (respectively third) root of unity.
pub fn known_points(model: Model) -> Result<Vec<KnownPoint>, SolverError> {
    let mut out = Vec::new();
    match model {
        Model::Gr2n(4) => {
            let xi = |k: i32| Complex64::from_polar(1.0, PI / 2.0 * k as f64);
            for j in 0..4 {
                let coords = gr(&[
                    ((1, 2), c(1.0, 0.0)),
                    ((1, 3), xi(-j) * SQRT_2),
                    ((1, 4), xi(-2 * j)),
                    ((2, 3), xi(-2 * j)),
                    ((2, 4), xi(j) * SQRT_2),
                    ((3, 4), c(1.0, 0.0)),
                ]);
                out.push(KnownPoint { label: format!("torus j={j}"), coords });
            }
            for j in 0..2 {
                let s = xi(2 * j) * c(0.0, 1.0);
                let coords = gr(&[
                    ((1, 2), c(-1.0, 0.0)),
                    ((1, 3), c(0.0, 0.0)),
                    ((1, 4), s),
                    ((2, 3), -s),
                    ((2, 4), c(0.0, 0.0)),
                    ((3, 4), c(1.0, 0.0)),
                ]);
                out.push(KnownPoint { label: format!("p13 = p24 = 0, j={j}"), coords });
            }
        }
        Model::Og15 => {
            let xi = |k: i32| Complex64::from_polar(1.0, 2.0 * PI / 3.0 * k as f64);
            let c4 = 4f64.cbrt();
            let c2 = 2f64.cbrt();
            for j in 0..3 {
                let coords = [("p0", c(1.0, 0.0)), ("p1", xi(j) * c4), ("p2", xi(2 * j) * c2), ("p3", c(1.0, 0.0))];
                out.push(KnownPoint { label: format!("j={j}"), coords: coords.iter().map(|(k, z)| (k.to_string(), *z)).collect() });
            }
            // (1, 0, 0, -1), scaled to p3 = 1.
            let coords = [("p0", c(-1.0, 0.0)), ("p1", c(0.0, 0.0)), ("p2", c(0.0, 0.0)), ("p3", c(1.0, 0.0))];
            out.push(KnownPoint { label: "u = v = 0".into(), coords: coords.iter().map(|(k, z)| (k.to_string(), *z)).collect() });
        }
        _ => return Err(SolverError::NoClosedForm(model.to_string())),
    }
    Ok(out)
}

/// Expected critical values at `q = 1`.
pub fn known_values(model: Model) -> Result<Vec<Complex64>, SolverError> {
    match model {
        Model::Gr2n(4) => {
            let mut v: Vec<Complex64> = (0..4).map(|j| Complex64::from_polar(4.0 * SQRT_2, PI / 2.0 * j as f64)).collect();
            v.extend([c(0.0, 0.0), c(0.0, 0.0)]);
            Ok(v)
        }
        Model::Og15 => {
            let mut v: Vec<Complex64> =
                (0..3).map(|j| Complex64::from_polar(3.0 * 4f64.cbrt(), 2.0 * PI / 3.0 * j as f64)).collect();
            v.push(c(0.0, 0.0));
            Ok(v)
        }
        _ => Err(SolverError::NoClosedForm(model.to_string())),
    }
}

/// Whether two lists agree as multisets up to `tol`.
pub fn multiset_match(found: &[Complex64], want: &[Complex64], tol: f64) -> bool {
    if found.len() != want.len() {
        return false;
    }
    let mut used = vec![false; want.len()];
    found.iter().all(|z| match (0..want.len()).find(|&k| !used[k] && (z - want[k]).norm() <= tol) {
        Some(k) => {
            used[k] = true;
            true
        }
        None => false,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownCheck {
    pub label: String,
    pub chart_coords: BTreeMap<String, Complex64>,
    pub value: Complex64,
    pub mirror_value: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownReport {
    pub model: Model,
    pub checks: Vec<KnownCheck>,
    pub expected_values: Vec<Complex64>,
    pub residuals_ok: bool,
    pub values_match: bool,
    pub count: usize,
    pub expected_count: usize,
}

impl KnownReport {
    pub fn passed(&self) -> bool {
        self.residuals_ok && self.values_match && self.count == self.expected_count
    }
}

/// Coordinates of the immersed chart `L0` as ratios of mirror coordinates.
fn l0_bindings(model: Model) -> Result<BTreeMap<Var, exact_algebra::RationalFunction>, SolverError> {
    match model {
        Model::Gr2n(4) => {
            let b = geometric_to_plucker(4, &[(1, 2)])?;
            Ok(gr24_renaming().iter().map(|(local, general)| (exact_algebra::var(local), b.bindings[&exact_algebra::var(general)].clone())).collect())
        }
        Model::Og15 => Ok(og_rietsch_bindings()),
        _ => Err(SolverError::NoClosedForm(model.to_string())),
    }
}

/// Evaluate the closed forms at `q = 1` on the chart `L0`: each must be a
/// critical point, and the values must match the expected list.
pub fn verify_known(model: Model) -> Result<KnownReport, SolverError> {
    let points = known_points(model)?;
    let want = known_values(model)?;
    let params: BTreeMap<String, f64> = [("T".to_string(), 1.0), ("q".to_string(), 1.0)].into_iter().collect();
    let l0 = model_charts(model)?.into_iter().next().expect("L0 comes first");
    let used: BTreeMap<String, f64> =
        params.iter().filter(|(k, _)| l0.potential.expr.contains_var(k)).map(|(k, v)| (k.clone(), *v)).collect();
    let sys = critical_system(&l0.potential, &used)?;
    let bindings = l0_bindings(model)?;
    let mirror = crate::model::mirror_potential(model)?;
    let mut checks = Vec::new();
    for kp in &points {
        let chart_coords: BTreeMap<String, Complex64> = bindings
            .iter()
            .map(|(v, e)| (v.to_string(), eval_f64(e, &kp.coords, &params).unwrap_or(c(f64::NAN, f64::NAN))))
            .collect();
        let x: Vec<Complex64> = sys.variables.iter().map(|v| chart_coords[v]).collect();
        let (residual, value) = match sys.residual_exact(&x) {
            Some((r, w)) => (r, to_complex(&w)),
            None => (f64::INFINITY, c(f64::NAN, f64::NAN)),
        };
        let mirror_value = eval_f64(&mirror, &kp.coords, &params).unwrap_or(c(f64::NAN, f64::NAN));
        checks.push(KnownCheck { label: kp.label.clone(), chart_coords, value, mirror_value, residual });
    }
    let values: Vec<Complex64> = checks.iter().map(|k| k.value).collect();
    let mirror_values: Vec<Complex64> = checks.iter().map(|k| k.mirror_value).collect();
    Ok(KnownReport {
        model,
        residuals_ok: checks.iter().all(|k| k.residual <= KNOWN_RESIDUAL_TOL),
        values_match: multiset_match(&values, &want, VALUE_TOL) && multiset_match(&mirror_values, &want, VALUE_TOL),
        count: checks.len(),
        expected_count: expected_count(model).unwrap_or(0),
        expected_values: want,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchRow {
    pub label: String,
    /// Index into the solver's merged points.
    pub found: Option<usize>,
    pub distance: f64,
}

/// Pair each closed-form point with the nearest merged solver point.
pub fn match_table(solved: &ModelSolve, known: &[KnownPoint], tol: f64) -> Vec<MatchRow> {
    known
        .iter()
        .map(|kp| {
            let best = solved
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| (i, kp.coords.iter().map(|(k, z)| (z - p.coords[k]).norm()).fold(0.0, f64::max)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((i, d)) if d <= tol => MatchRow { label: kp.label.clone(), found: Some(i), distance: d },
                Some((_, d)) => MatchRow { label: kp.label.clone(), found: None, distance: d },
                None => MatchRow { label: kp.label.clone(), found: None, distance: f64::INFINITY },
            }
        })
        .collect()
}
