//! Koszul matrix factorizations: split `W - W(c)` along a center `c` as
//! `sum (x_i - c_i) f_i`, and check that `delta = sum (x_i - c_i) theta_i ^ . +
//! sum f_i d/dtheta_i` squares to `(W - W(c)) id` on the exterior algebra.

pub mod error;
pub mod extension;

use std::collections::BTreeMap;

use exact_algebra::{var, RationalFunction, Var};
use potentials::Potential;
use serde::Serialize;

pub use error::KoszulError;
pub use extension::QuadraticExtension;

use extension::reduce;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulData {
    pub variables: Vec<String>,
    pub center: Vec<RationalFunction>,
    pub cofactors: Vec<RationalFunction>,
    pub potential: RationalFunction,
    /// `W` at the center.
    pub lambda: RationalFunction,
    pub extension: Option<QuadraticExtension>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulJson {
    pub variables: Vec<String>,
    pub center: Vec<String>,
    pub cofactors: Vec<String>,
    pub potential: String,
    pub lambda: String,
    pub extension: Option<QuadraticExtension>,
}

impl KoszulData {
    pub fn rank(&self) -> usize {
        self.variables.len()
    }

    fn shift(&self, i: usize) -> RationalFunction {
        &RationalFunction::var(&self.variables[i]) - &self.center[i]
    }

    fn reduce(&self, e: &RationalFunction) -> Result<RationalFunction, KoszulError> {
        reduce(self.extension.as_ref(), e)
    }

    pub fn to_json(&self) -> KoszulJson {
        let s = |v: &[RationalFunction]| v.iter().map(|e| e.to_string()).collect();
        KoszulJson {
            variables: self.variables.clone(),
            center: s(&self.center),
            cofactors: s(&self.cofactors),
            potential: self.potential.to_string(),
            lambda: self.lambda.to_string(),
            extension: self.extension.clone(),
        }
    }
}

fn check_constant(e: &RationalFunction, variables: &[String], ext: Option<&QuadraticExtension>) -> Result<(), KoszulError> {
    let ok = e.variables().iter().all(|v| ext.is_some_and(|x| **v == *x.symbol) && !variables.iter().any(|w| **w == **v));
    if ok {
        Ok(())
    } else {
        Err(KoszulError::NotConstant(e.to_string()))
    }
}

/// Decompose by successive differences:
/// `f_i = (W(x_1..x_i, c_{i+1}..) - W(x_1..x_{i-1}, c_i..)) / (x_i - c_i)`.
pub fn center_decompose_expr(
    w: &RationalFunction,
    variables: &[String],
    center: &[RationalFunction],
    ext: Option<QuadraticExtension>,
) -> Result<KoszulData, KoszulError> {
    if center.len() != variables.len() {
        return Err(KoszulError::Dimension(center.len(), variables.len()));
    }
    for c in center {
        check_constant(c, variables, ext.as_ref())?;
    }
    let ext_ref = ext.as_ref();
    // partial[i] = W with the first i variables free, the rest at the center.
    let mut partial = Vec::with_capacity(variables.len() + 1);
    for i in 0..=variables.len() {
        let fixed: BTreeMap<Var, RationalFunction> =
            variables[i..].iter().zip(&center[i..]).map(|(v, c)| (var(v), c.clone())).collect();
        let pole = || KoszulError::Pole(w.to_string());
        // Substitute numerator and denominator separately: a denominator
        // that only vanishes after rewriting in the extension is a pole too.
        let num = RationalFunction::from_poly(w.numerator().clone()).substitute(&fixed).map_err(|_| pole())?;
        let den = RationalFunction::from_poly(w.denominator().clone()).substitute(&fixed).map_err(|_| pole())?;
        let den = reduce(ext_ref, &den)?;
        if den.is_zero() {
            return Err(pole());
        }
        partial.push(reduce(ext_ref, &num.checked_div(&den)?)?);
    }
    let lambda = partial[0].clone();
    let mut cofactors = Vec::with_capacity(variables.len());
    for i in 0..variables.len() {
        let diff = &partial[i + 1] - &partial[i];
        let step = &RationalFunction::var(&variables[i]) - &center[i];
        cofactors.push(reduce(ext_ref, &diff.checked_div(&step)?)?);
    }
    let data = KoszulData {
        variables: variables.to_vec(),
        center: center.to_vec(),
        cofactors,
        potential: w.clone(),
        lambda,
        extension: ext,
    };
    let mut sum = RationalFunction::zero();
    for i in 0..data.rank() {
        sum = &sum + &(&data.shift(i) * &data.cofactors[i]);
    }
    let gap = data.reduce(&(&sum - &(&data.potential - &data.lambda)))?;
    if !gap.is_zero() {
        return Err(KoszulError::Decomposition(gap.to_string()));
    }
    Ok(data)
}

/// [`center_decompose_expr`] on a chart potential, with the center given
/// per variable.
pub fn center_decompose(
    w: &Potential,
    center: &BTreeMap<String, RationalFunction>,
    ext: Option<QuadraticExtension>,
) -> Result<KoszulData, KoszulError> {
    let values = w
        .variables
        .iter()
        .map(|v| center.get(v).cloned().ok_or(KoszulError::Dimension(center.len(), w.variables.len())))
        .collect::<Result<Vec<_>, _>>()?;
    if center.len() != w.variables.len() {
        return Err(KoszulError::Dimension(center.len(), w.variables.len()));
    }
    center_decompose_expr(&w.expr, &w.variables, &values, ext)
}

/// An element of the exterior algebra on `theta_1..theta_m`, indexed by
/// subsets encoded as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    pub rank: usize,
    pub coefficients: BTreeMap<u32, RationalFunction>,
}

impl ExteriorElement {
    pub fn zero(rank: usize) -> Self {
        ExteriorElement { rank, coefficients: BTreeMap::new() }
    }

    pub fn basis(rank: usize, subset: u32) -> Self {
        let mut e = Self::zero(rank);
        e.coefficients.insert(subset, RationalFunction::one());
        e
    }

    fn add_term(&mut self, subset: u32, c: RationalFunction) {
        let entry = self.coefficients.entry(subset).or_insert_with(RationalFunction::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coefficients.remove(&subset);
        }
    }

    /// Degrees of the nonzero components.
    pub fn degrees(&self) -> Vec<u32> {
        self.coefficients.keys().map(|s| s.count_ones()).collect()
    }
}

/// `(-1)^{#{j in S : j < i}}`.
fn koszul_sign(subset: u32, i: usize) -> i64 {
    if (subset & ((1u32 << i) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn subset_label(subset: u32, rank: usize) -> String {
    let idx: Vec<String> = (0..rank).filter(|i| subset & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", idx.join(","))
}

/// `delta` applied to `e`.
pub fn apply_delta(k: &KoszulData, e: &ExteriorElement) -> Result<ExteriorElement, KoszulError> {
    let mut out = ExteriorElement::zero(k.rank());
    for (&s, c) in &e.coefficients {
        for i in 0..k.rank() {
            let bit = 1u32 << i;
            let sign = RationalFunction::from_int(koszul_sign(s, i));
            if s & bit == 0 {
                out.add_term(s | bit, &(&sign * &k.shift(i)) * c);
            } else {
                out.add_term(s & !bit, &(&sign * &k.cofactors[i]) * c);
            }
        }
    }
    let mut reduced = ExteriorElement::zero(k.rank());
    for (s, c) in out.coefficients {
        let c = k.reduce(&c)?;
        if !c.is_zero() {
            reduced.coefficients.insert(s, c);
        }
    }
    Ok(reduced)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    pub subset: String,
    pub square_ok: bool,
    /// `delta` sends this element only to degrees one up or one down.
    pub odd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub rank: usize,
    pub basis: Vec<BasisCheck>,
    pub passed: bool,
}

/// Check `delta^2 = (W - lambda) id` on all `2^m` basis elements.
pub fn koszul_report(k: &KoszulData) -> Result<KoszulReport, KoszulError> {
    let m = k.rank();
    let target = k.reduce(&(&k.potential - &k.lambda))?;
    let mut basis = Vec::with_capacity(1 << m);
    for s in 0..(1u32 << m) {
        let e = ExteriorElement::basis(m, s);
        let d = apply_delta(k, &e)?;
        let deg = s.count_ones() as i64;
        let odd = d.degrees().iter().all(|&g| (g as i64 - deg).abs() == 1);
        let dd = apply_delta(k, &d)?;
        let mut want = ExteriorElement::zero(m);
        if !target.is_zero() {
            want.coefficients.insert(s, target.clone());
        }
        let square_ok = dd.coefficients.len() == want.coefficients.len()
            && dd.coefficients.iter().all(|(t, c)| want.coefficients.get(t).is_some_and(|w| c.equal(w)));
        basis.push(BasisCheck { subset: subset_label(s, m), square_ok, odd });
    }
    let passed = basis.iter().all(|b| b.square_ok && b.odd);
    Ok(KoszulReport { rank: m, basis, passed })
}

/// Whether `delta^2 = (W - lambda) id`; a reduction failure counts as `false`.
pub fn koszul_square_check(k: &KoszulData) -> bool {
    koszul_report(k).is_ok_and(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use exact_algebra::rf;

    use super::*;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn square() {
        let k = center_decompose_expr(&rf("x^2"), &vars(&["x"]), &[rf("0")], None).unwrap();
        assert_eq!(k.cofactors, vec![rf("x")]);
        assert!(k.lambda.is_zero());
        assert!(koszul_square_check(&k));
    }

    #[test]
    fn signs() {
        assert_eq!(koszul_sign(0b000, 2), 1);
        assert_eq!(koszul_sign(0b001, 2), -1);
        assert_eq!(koszul_sign(0b011, 2), 1);
        assert_eq!(koszul_sign(0b111, 0), 1);
        assert_eq!(subset_label(0b101, 3), "{1,3}");
    }

    #[test]
    fn nonzero_lambda() {
        let k = center_decompose_expr(&rf("x*y + x + 3"), &vars(&["x", "y"]), &[rf("1"), rf("2")], None).unwrap();
        assert_eq!(k.lambda, rf("6"));
        assert!(koszul_square_check(&k));
    }

    #[test]
    fn poles_and_shapes() {
        assert!(matches!(center_decompose_expr(&rf("1/x"), &vars(&["x"]), &[rf("0")], None), Err(KoszulError::Pole(_))));
        assert!(matches!(center_decompose_expr(&rf("x"), &vars(&["x"]), &[], None), Err(KoszulError::Dimension(0, 1))));
        assert!(matches!(center_decompose_expr(&rf("x*y"), &vars(&["x", "y"]), &[rf("y"), rf("0")], None), Err(KoszulError::NotConstant(_))));
        let i = QuadraticExtension::sqrt_minus_one("s");
        assert!(matches!(center_decompose_expr(&rf("1/(x^2 + 1)"), &vars(&["x"]), &[rf("s")], Some(i)), Err(KoszulError::Pole(_))));
    }
}
