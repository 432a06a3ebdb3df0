//! Fast complex evaluation of fixed polynomials, and exact re-evaluation over
//! the Gaussian rationals.

use std::collections::BTreeMap;

use exact_algebra::{Coeff, LaurentPoly, RationalFunction, Var};
use num_complex::{Complex, Complex64};
use num_traits::{ToPrimitive, Zero};

use crate::error::SolverError;

/// A Laurent polynomial with its parameters folded into the coefficients
/// and its variables replaced by slot indices.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    terms: Vec<(Complex64, Vec<(usize, i32)>)>,
}

impl Compiled {
    pub(crate) fn new(
        p: &LaurentPoly,
        index: &BTreeMap<Var, usize>,
        params: &BTreeMap<Var, f64>,
    ) -> Result<Self, SolverError> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut coeff = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            let mut powers = Vec::new();
            for (v, e) in m.pairs() {
                if let Some(&i) = index.get(v) {
                    powers.push((i, *e));
                } else if let Some(&t) = params.get(v) {
                    coeff *= t.powi(*e);
                } else {
                    return Err(SolverError::Unbound(v.to_string()));
                }
            }
            terms.push((coeff, powers));
        }
        Ok(Compiled { terms })
    }

    fn term(&self, k: usize, x: &[Complex64]) -> Complex64 {
        let (c, powers) = &self.terms[k];
        powers.iter().fold(*c, |acc, (i, e)| acc * x[*i].powi(*e))
    }

    pub(crate) fn eval(&self, x: &[Complex64]) -> Complex64 {
        (0..self.terms.len()).map(|k| self.term(k, x)).sum()
    }

    /// Sum of the moduli of the terms: the scale against which a value of
    /// this polynomial counts as zero.
    pub(crate) fn magnitude(&self, x: &[Complex64]) -> f64 {
        (0..self.terms.len()).map(|k| self.term(k, x).norm()).sum()
    }
}

/// Numerator and denominator compiled together.
#[derive(Clone, Debug)]
pub(crate) struct CompiledRational {
    pub num: Compiled,
    pub den: Compiled,
}

impl CompiledRational {
    pub(crate) fn new(
        e: &RationalFunction,
        index: &BTreeMap<Var, usize>,
        params: &BTreeMap<Var, f64>,
    ) -> Result<Self, SolverError> {
        Ok(CompiledRational { num: Compiled::new(e.numerator(), index, params)?, den: Compiled::new(e.denominator(), index, params)? })
    }

    pub(crate) fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.num.eval(x) / self.den.eval(x)
    }
}

pub type Gaussian = Complex<Coeff>;

/// The Gaussian rational equal to a complex double; every finite double is
/// a dyadic rational, so this is exact.
pub fn exact(z: Complex64) -> Option<Gaussian> {
    Some(Complex::new(Coeff::from_float(z.re)?, Coeff::from_float(z.im)?))
}

pub fn to_complex(z: &Gaussian) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

pub fn gaussian_norm(z: &Gaussian) -> f64 {
    z.norm_sqr().to_f64().unwrap_or(f64::INFINITY).sqrt()
}

/// Exact value of `e` at `point`; `None` if the denominator vanishes or a
/// variable is missing.
pub fn exact_eval(e: &RationalFunction, point: &BTreeMap<Var, Gaussian>) -> Option<Gaussian> {
    if e.variables().iter().any(|v| !point.contains_key(v)) {
        return None;
    }
    // Canonical numerators and denominators carry no negative exponents.
    let value = |v: &Var, k: i32| num_traits::pow(point[v].clone(), k.max(0) as usize);
    let lift = |c: &Coeff| Complex::new(c.clone(), Coeff::zero());
    let (n, d) = e.eval_with(Complex::zero(), lift, value);
    if d.is_zero() {
        return None;
    }
    Some(n / d)
}

/// Complex double value of `e`, with parameters bound by `params`.
pub fn eval_f64(e: &RationalFunction, point: &BTreeMap<String, Complex64>, params: &BTreeMap<String, f64>) -> Option<Complex64> {
    let mut full: BTreeMap<Var, Complex64> = point.iter().map(|(k, v)| (exact_algebra::var(k), *v)).collect();
    for (k, t) in params {
        full.entry(exact_algebra::var(k)).or_insert(Complex64::new(*t, 0.0));
    }
    if e.variables().iter().any(|v| !full.contains_key(v)) {
        return None;
    }
    let value = |v: &Var, k: i32| full[v].powi(k);
    let lift = |c: &Coeff| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    let (n, d) = e.eval_with(Complex64::zero(), lift, value);
    let out = n / d;
    (out.is_finite() && !d.is_zero()).then_some(out)
}
