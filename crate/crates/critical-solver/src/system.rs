use std::collections::BTreeMap;

use exact_algebra::{var, LaurentPoly, RationalFunction, Var};
use num_complex::Complex64;
use potentials::Potential;

use crate::error::SolverError;
use crate::eval::{exact, exact_eval, gaussian_norm, Compiled, CompiledRational, Gaussian};

/// The critical equations of a potential with its parameters bound.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub chart: String,
    pub variables: Vec<String>,
    pub params: BTreeMap<String, f64>,
    pub potential: RationalFunction,
    /// `dW/dx` for each variable, in order.
    pub gradient: Vec<RationalFunction>,
    /// Numerators of the gradient: the equations Newton solves.
    pub equations: Vec<LaurentPoly>,
    /// Roots on which any of these vanish are discarded.
    pub denominators: Vec<LaurentPoly>,
    pub(crate) compiled: CompiledSystem,
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledSystem {
    pub equations: Vec<Compiled>,
    pub jacobian: Vec<Vec<Compiled>>,
    pub gradient: Vec<CompiledRational>,
    pub potential: CompiledRational,
    pub denominators: Vec<Compiled>,
}

/// Build the system `dW/dx = 0` with the parameters of `bindings` (such as
/// `T` and `q`) fixed to positive reals.
pub fn critical_system(p: &Potential, bindings: &BTreeMap<String, f64>) -> Result<PolySystem, SolverError> {
    for (k, t) in bindings {
        if !(t.is_finite() && *t > 0.0) {
            return Err(SolverError::NotPositive(k.clone(), *t));
        }
    }
    let index: BTreeMap<Var, usize> = p.variables.iter().enumerate().map(|(i, v)| (var(v), i)).collect();
    let params: BTreeMap<Var, f64> = bindings.iter().map(|(k, t)| (var(k), *t)).collect();
    for v in p.expr.variables() {
        if !index.contains_key(&v) && !params.contains_key(&v) {
            return Err(SolverError::Unbound(v.to_string()));
        }
    }
    let gradient: Vec<RationalFunction> = p.variables.iter().map(|v| p.expr.partial(v)).collect();
    let equations: Vec<LaurentPoly> = gradient.iter().map(|g| g.numerator().clone()).collect();
    let denominators = vec![p.expr.denominator().clone()];
    let compile = |q: &LaurentPoly| Compiled::new(q, &index, &params);
    let compiled = CompiledSystem {
        equations: equations.iter().map(compile).collect::<Result<_, _>>()?,
        jacobian: equations
            .iter()
            .map(|e| p.variables.iter().map(|v| compile(&e.partial(v))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?,
        gradient: gradient.iter().map(|g| CompiledRational::new(g, &index, &params)).collect::<Result<_, _>>()?,
        potential: CompiledRational::new(&p.expr, &index, &params)?,
        denominators: denominators.iter().map(compile).collect::<Result<_, _>>()?,
    };
    Ok(PolySystem {
        chart: p.chart.clone(),
        variables: p.variables.clone(),
        params: bindings.clone(),
        potential: p.expr.clone(),
        gradient,
        equations,
        denominators,
        compiled,
    })
}

/// Relative size below which a denominator counts as vanishing.
pub const DENOMINATOR_FLOOR: f64 = 1e-8;

impl PolySystem {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Whether no recorded denominator vanishes at `x`, relative to the size
    /// of its terms.
    pub fn off_denominators(&self, x: &[Complex64]) -> bool {
        self.compiled.denominators.iter().all(|d| d.eval(x).norm() >= DENOMINATOR_FLOOR * d.magnitude(x))
    }

    /// `max |dW/dx|` in double precision.
    pub fn residual_f64(&self, x: &[Complex64]) -> f64 {
        self.compiled.gradient.iter().map(|g| g.eval(x).norm()).fold(0.0, f64::max)
    }

    pub fn value_f64(&self, x: &[Complex64]) -> Complex64 {
        self.compiled.potential.eval(x)
    }

    fn exact_point(&self, x: &[Complex64]) -> Option<BTreeMap<Var, Gaussian>> {
        let mut pt = BTreeMap::new();
        for (v, z) in self.variables.iter().zip(x) {
            pt.insert(var(v), exact(*z)?);
        }
        for (k, t) in &self.params {
            pt.insert(var(k), exact(Complex64::new(*t, 0.0))?);
        }
        Some(pt)
    }

    /// `max |dW/dx|` and `W`, evaluated exactly at the dyadic point `x`.
    /// `None` when a denominator vanishes there exactly.
    pub fn residual_exact(&self, x: &[Complex64]) -> Option<(f64, Gaussian)> {
        let pt = self.exact_point(x)?;
        let mut worst = 0.0f64;
        for g in &self.gradient {
            worst = worst.max(gaussian_norm(&exact_eval(g, &pt)?));
        }
        Some((worst, exact_eval(&self.potential, &pt)?))
    }
}
