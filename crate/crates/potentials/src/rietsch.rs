//! Rietsch potentials of Gr(2,n) and their Laurent expansions on cluster charts.

use exact_algebra::{div_exact, int, var, LaurentPoly, Monomial, RationalFunction};
use gc_combinatorics::validate_pairs;
use plucker::{equal_mod_plucker, p, p_name, PluckerExpression};

use crate::error::PotentialError;

fn pm(i: u32, j: u32) -> Monomial {
    Monomial::var(var(&p_name(i, j)))
}

/// `q p_{2,n}/p_{1,2} + sum_{j=2}^{n-1} p_{j-1,j+1}/p_{j,j+1} + p_{1,n-1}/p_{1,n}`.
pub fn rietsch_gr(n: u32) -> Result<PluckerExpression, PotentialError> {
    if n < 4 {
        return Err(gc_combinatorics::GcError::UnsupportedN(n).into());
    }
    let mut w = &RationalFunction::var("q") * &(&p(2, n) / &p(1, 2));
    for j in 2..n {
        w = &w + &(&p(j - 1, j + 1) / &p(j, j + 1));
    }
    w = &w + &(&p(1, n - 1) / &p(1, n));
    Ok(PluckerExpression::new(w, n)?)
}

/// `p_{i,j}` for `i < j < n` in the fan cluster `{p_{k,k+1}, p_{1,n}, p_{k,n}}`:
/// `p_{i,n} p_{j,n} sum_{k=i}^{j-1} p_{k,k+1} / (p_{k,n} p_{k+1,n})`.
fn cluster_expansion(n: u32, i: u32, j: u32) -> LaurentPoly {
    let outer = pm(i, n).mul(&pm(j, n));
    let mut out = LaurentPoly::zero();
    for k in i..j {
        let m = pm(k, k + 1).mul(&outer).div(&pm(k, n)).div(&pm(k + 1, n));
        out.add_term(m, int(1));
    }
    out
}

fn cluster_poly(n: u32) -> LaurentPoly {
    let mut w = LaurentPoly::term(Monomial::var(var("q")).mul(&pm(2, n)).div(&pm(1, 2)), int(1));
    for j in 2..n {
        let top = if j + 1 == n { LaurentPoly::monomial(pm(j - 1, n)) } else { cluster_expansion(n, j - 1, j + 1) };
        w = w + top.mul_monomial(&pm(j, j + 1).inv());
    }
    w + cluster_expansion(n, 1, n - 1).mul_monomial(&pm(1, n).inv())
}

/// The Rietsch potential as a Laurent polynomial on the torus chart, in the
/// frozen coordinates and `p_{2,n}, ..., p_{n-2,n}`.
pub fn rietsch_cluster(n: u32) -> Result<PluckerExpression, PotentialError> {
    if n < 4 {
        return Err(gc_combinatorics::GcError::UnsupportedN(n).into());
    }
    Ok(PluckerExpression::new(RationalFunction::from_poly(cluster_poly(n)), n)?)
}

/// Trade `p_{k,n}` for `p_{k-1,k+1}` in every denominator, using
/// `p_{k-1,k+1} p_{k,n} = p_{k-1,k} p_{k+1,n} + p_{k,k+1} p_{k-1,n}`.
fn clear(w: &LaurentPoly, n: u32, k: u32) -> Result<LaurentPoly, PotentialError> {
    let name = p_name(k, n);
    let fail = |msg: &str| PotentialError::Clearing(k, n, msg.to_string());
    let group = LaurentPoly::from_terms(
        w.terms().filter(|(m, _)| m.exponent(&name) < 0).map(|(m, c)| (m.clone(), c.clone())),
    );
    if group.is_zero() {
        return Ok(w.clone());
    }
    let lifted = group.mul_monomial(&pm(k, n));
    if lifted.terms().any(|(m, _)| m.exponent(&name) < 0) {
        return Err(fail("higher pole"));
    }
    let den = lifted.denominator_monomial();
    let numer = lifted.mul_monomial(&den);
    let rel = LaurentPoly::monomial(pm(k - 1, k).mul(&pm(k + 1, n)))
        + LaurentPoly::monomial(pm(k, k + 1).mul(&pm(k - 1, n)));
    let quotient = div_exact(&numer, &rel).ok_or_else(|| fail("relation does not divide"))?;
    let replacement = quotient.mul_monomial(&pm(k - 1, k + 1).div(&den));
    Ok(&(w - &group) + &replacement)
}

/// The Rietsch potential on the immersed chart of `pairs`: no `p_{n-1-i,n}`
/// with `(i, i+1)` in `pairs` is left in a denominator.
pub fn rietsch_restrict(n: u32, pairs: &[(u32, u32)]) -> Result<PluckerExpression, PotentialError> {
    let pairs = validate_pairs(n, pairs)?;
    let mut w = cluster_poly(n);
    for &(i, _) in &pairs {
        w = clear(&w, n, n - 1 - i)?;
    }
    for &(i, _) in &pairs {
        let name = p_name(n - 1 - i, n);
        if w.terms().any(|(m, _)| m.exponent(&name) < 0) {
            return Err(PotentialError::Clearing(n - 1 - i, n, "pole survived".into()));
        }
    }
    let e = PluckerExpression::new(RationalFunction::from_poly(w), n)?;
    if !equal_mod_plucker(&e, &rietsch_gr(n)?)? {
        return Err(PotentialError::Clearing(0, n, "result differs from the Rietsch potential".into()));
    }
    Ok(e)
}
