use std::collections::BTreeMap;

use exact_algebra::{var, LaurentPoly, Monomial, RationalFunction, Var};

use crate::error::PotentialError;
use crate::Potential;

fn t_power(k: i32) -> RationalFunction {
    RationalFunction::from(Monomial::pow_of(var("T"), k))
}

/// Substitute `x -> T^k x` for every `(x, k)` in `tmap`.
pub fn valuation_adjust_expr(e: &RationalFunction, tmap: &BTreeMap<Var, i32>) -> RationalFunction {
    let map: BTreeMap<Var, RationalFunction> =
        tmap.iter().map(|(v, k)| (v.clone(), &t_power(*k) * &RationalFunction::var(v))).collect();
    e.substitute(&map).expect("monomial substitution cannot vanish")
}

pub fn valuation_adjust(p: &Potential, tmap: &BTreeMap<Var, i32>) -> Potential {
    let terms = p.terms.iter().map(|t| valuation_adjust_expr(t, tmap)).collect();
    Potential::from_terms(terms, &p.chart, p.variables.clone(), p.model)
}

/// Multiply every term by `T^k`.
pub fn times_t(p: &Potential, k: i32) -> Potential {
    let terms = p.terms.iter().map(|t| t * &t_power(k)).collect();
    Potential::from_terms(terms, &p.chart, p.variables.clone(), p.model)
}

pub fn inverse_map(tmap: &BTreeMap<Var, i32>) -> BTreeMap<Var, i32> {
    tmap.iter().map(|(v, k)| (v.clone(), -k)).collect()
}

/// Valuation map of the torus coordinates: `z_{1,j} -> T^{1+j} z_{1,j}`,
/// `z_{2,j} -> T^j z_{2,j}`, and `u_i -> T u_i`, `v_i -> T^-1 v_i`.
/// After it every term of an immersed potential is `T` times a `T`-free term.
pub fn torus_valuation_map(n: u32, pairs: &[(u32, u32)]) -> BTreeMap<Var, i32> {
    let mut m = BTreeMap::new();
    for j in 1..=n - 2 {
        m.insert(var(&format!("z1,{j}")), 1 + j as i32);
        m.insert(var(&format!("z2,{j}")), j as i32);
    }
    for &(i, _) in pairs {
        m.insert(var(&format!("u{i}")), 1);
        m.insert(var(&format!("v{i}")), -1);
    }
    m
}

fn poly_t_to_q(p: &LaurentPoly, n: u32) -> Result<LaurentPoly, PotentialError> {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.coefficients_in("T") {
        if e % n as i32 != 0 {
            return Err(PotentialError::FractionalQ(e, n));
        }
        out = out + c.mul_monomial(&Monomial::pow_of(var("q"), e / n as i32));
    }
    Ok(out)
}

/// Rewrite `T^{kn}` as `q^k`.
pub fn t_to_q(e: &RationalFunction, n: u32) -> Result<RationalFunction, PotentialError> {
    let num = poly_t_to_q(e.numerator(), n)?;
    let den = poly_t_to_q(e.denominator(), n)?;
    Ok(RationalFunction::new(num, den)?)
}
