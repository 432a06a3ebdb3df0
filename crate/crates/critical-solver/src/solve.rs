use std::collections::BTreeMap;
use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::SolverError;
use crate::eval::to_complex;
use crate::system::PolySystem;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveConfig {
    pub starts: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub dedup_radius: f64,
    pub annulus: (f64, f64),
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { starts: 2000, newton_tol: 1e-12, max_iter: 100, dedup_radius: 1e-6, annulus: (0.05, 20.0), seed: 42 }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.starts == 0 || self.max_iter == 0 {
            return Err(SolverError::Config(format!("starts {}, max_iter {}", self.starts, self.max_iter)));
        }
        let (lo, hi) = self.annulus;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(SolverError::Config(format!("annulus ({lo}, {hi})")));
        }
        if self.newton_tol.is_nan() || self.newton_tol <= 0.0 {
            return Err(SolverError::Config(format!("newton_tol {}", self.newton_tol)));
        }
        if self.dedup_radius.is_nan() || self.dedup_radius < 0.0 {
            return Err(SolverError::Config(format!("dedup_radius {}", self.dedup_radius)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub coords: BTreeMap<String, Complex64>,
    pub value: Complex64,
    /// `max |dW/dx|`, evaluated exactly at the returned double coordinates.
    pub residual: f64,
}

impl CriticalPoint {
    pub fn coordinate_vector(&self, variables: &[String]) -> Vec<Complex64> {
        variables.iter().map(|v| self.coords[v]).collect()
    }
}

/// Extra Newton steps after the step-size test passes.
const POLISH_STEPS: usize = 2;
/// Iterates leaving this ball are abandoned.
const ESCAPE: f64 = 1e12;

fn sup(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn newton_step(sys: &PolySystem, x: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = sys.len();
    let f = DVector::from_iterator(m, sys.compiled.equations.iter().map(|e| -e.eval(x)));
    let j = DMatrix::from_fn(m, m, |r, c| sys.compiled.jacobian[r][c].eval(x));
    let dx = j.lu().solve(&f)?;
    dx.iter().all(|z| z.is_finite()).then(|| dx.iter().copied().collect())
}

fn newton(sys: &PolySystem, start: Vec<Complex64>, cfg: &SolveConfig) -> Option<Vec<Complex64>> {
    let mut x = start;
    let mut converged = false;
    for _ in 0..cfg.max_iter {
        let dx = newton_step(sys, &x)?;
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi += di;
        }
        if sup(&x) > ESCAPE {
            return None;
        }
        if sup(&dx) <= cfg.newton_tol * (1.0 + sup(&x)) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    for _ in 0..POLISH_STEPS {
        match newton_step(sys, &x) {
            Some(dx) => {
                for (xi, di) in x.iter_mut().zip(&dx) {
                    *xi += di;
                }
            }
            None => break,
        }
    }
    Some(x)
}

fn random_start(m: usize, cfg: &SolveConfig, index: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let (lo, hi) = cfg.annulus;
    (0..m)
        .map(|_| {
            let r = if lo < hi { rng.random_range(lo..hi) } else { lo };
            let theta = rng.random_range(0.0..TAU);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Multi-start Newton on `sys`. Runs are independent and seeded per start,
/// so the result does not depend on scheduling.
pub fn solve(sys: &PolySystem, cfg: &SolveConfig) -> Result<Vec<CriticalPoint>, SolverError> {
    cfg.validate()?;
    let m = sys.len();
    let candidates: Vec<(Vec<Complex64>, f64)> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|k| {
            let x = newton(sys, random_start(m, cfg, k), cfg)?;
            if !sys.off_denominators(&x) {
                return None;
            }
            let r = sys.residual_f64(&x);
            (r <= cfg.newton_tol).then_some((x, r))
        })
        .collect();

    // Greedy clustering in start order; each cluster keeps its best run.
    let mut reps: Vec<(Vec<Complex64>, f64)> = Vec::new();
    for (x, r) in candidates {
        match reps.iter_mut().find(|(y, _)| distance(&x, y) <= cfg.dedup_radius) {
            Some(rep) => {
                if r < rep.1 {
                    *rep = (x, r);
                }
            }
            None => reps.push((x, r)),
        }
    }

    let mut out = Vec::new();
    for (x, _) in reps {
        let Some((residual, value)) = sys.residual_exact(&x) else { continue };
        if residual > cfg.newton_tol {
            continue;
        }
        out.push(CriticalPoint {
            coords: sys.variables.iter().cloned().zip(x.iter().copied()).collect(),
            value: to_complex(&value),
            residual,
        });
    }
    Ok(out)
}
