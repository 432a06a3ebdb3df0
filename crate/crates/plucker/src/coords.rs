use std::collections::BTreeMap;

use exact_algebra::{var, LaurentPoly, RationalFunction, Var};

use crate::error::PluckerError;

pub fn p_name(i: u32, j: u32) -> String {
    format!("p{i},{j}")
}

/// `p_{i,j}` as a rational function; swapped indices give `-p_{j,i}`.
pub fn p(i: u32, j: u32) -> RationalFunction {
    if i < j {
        RationalFunction::var(&p_name(i, j))
    } else {
        -RationalFunction::var(&p_name(j, i))
    }
}

fn p_poly(i: u32, j: u32) -> LaurentPoly {
    LaurentPoly::var(&p_name(i, j))
}

/// Parse `p{i},{j}` back into its index pair.
pub fn p_index(v: &str) -> Option<(u32, u32)> {
    let rest = v.strip_prefix('p')?;
    let (a, b) = rest.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// `p_{i,j} p_{k,l} - p_{i,k} p_{j,l} + p_{i,l} p_{j,k}`.
pub fn plucker_relation(i: u32, j: u32, k: u32, l: u32, n: u32) -> Result<LaurentPoly, PluckerError> {
    if !(1 <= i && i < j && j < k && k < l && l <= n) {
        return Err(PluckerError::BadIndices(vec![i, j, k, l], n));
    }
    Ok(&(&p_poly(i, j) * &p_poly(k, l)) - &(&p_poly(i, k) * &p_poly(j, l))
        + &p_poly(i, l) * &p_poly(j, k))
}

/// The involution `(i, j) -> (n+1-j, n+1-i)` on index pairs.
pub fn dual_index(n: u32, (i, j): (u32, u32)) -> (u32, u32) {
    (n + 1 - j, n + 1 - i)
}

/// A rational function in `p_{i,j}` (and `q`, `T`) on Gr(2,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerExpression {
    pub expr: RationalFunction,
    pub n: u32,
}

impl PluckerExpression {
    pub fn new(expr: RationalFunction, n: u32) -> Result<Self, PluckerError> {
        for v in expr.variables() {
            if let Some((i, j)) = p_index(&v) {
                if !(1 <= i && i < j && j <= n) {
                    return Err(PluckerError::ForeignVariable(v.to_string(), n));
                }
            } else if v.starts_with('p') {
                return Err(PluckerError::ForeignVariable(v.to_string(), n));
            }
        }
        Ok(PluckerExpression { expr, n })
    }
}

fn a(i: u32) -> LaurentPoly {
    LaurentPoly::var(&format!("a{i}"))
}

fn b(i: u32) -> LaurentPoly {
    LaurentPoly::var(&format!("b{i}"))
}

fn det(i: u32, j: u32) -> LaurentPoly {
    &(&a(i) * &b(j)) - &(&a(j) * &b(i))
}

/// Substitute `p_{i,j} -> a_i b_j - a_j b_i`.
pub fn parametrize(e: &PluckerExpression) -> RationalFunction {
    let mut map = BTreeMap::new();
    for v in e.expr.variables() {
        if let Some((i, j)) = p_index(&v) {
            map.insert(v.clone(), RationalFunction::from_poly(det(i, j)));
        }
    }
    e.expr.substitute(&map).expect("polynomial images cannot make a denominator vanish identically")
}

/// The parametrization with rows `n-1` and `n` fixed to `(1, 0)` and `(0, s)`.
///
/// Every point of the cone with `p_{n-1,n} != 0` is reached by a unique
/// such matrix, so the map is still dominant while using `2n - 3` instead
/// of `2n` symbols.
fn frame(n: u32) -> BTreeMap<Var, LaurentPoly> {
    let s = LaurentPoly::var("s");
    let mut map = BTreeMap::new();
    for i in 1..n {
        for j in i + 1..=n {
            let img = if j == n && i == n - 1 {
                s.clone()
            } else if j == n {
                &s * &a(i)
            } else if j == n - 1 {
                -b(i)
            } else {
                det(i, j)
            };
            map.insert(var(&p_name(i, j)), img);
        }
    }
    map
}

fn framed(poly: &LaurentPoly, f: &BTreeMap<Var, LaurentPoly>) -> LaurentPoly {
    // Canonical numerators and denominators are polynomials.
    debug_assert!(poly.is_polynomial());
    poly.substitute_poly(f).expect("polynomial input")
}

/// Whether `e1 = e2` as functions on the cone over Gr(2,n).
///
/// Cross-multiplies after parametrizing, which is sound and complete because
/// the Plucker ideal is prime and the parametrization is dominant.
pub fn equal_mod_plucker(e1: &PluckerExpression, e2: &PluckerExpression) -> Result<bool, PluckerError> {
    if e1.n != e2.n {
        return Err(PluckerError::DimensionMismatch(e1.n, e2.n));
    }
    let f = frame(e1.n);
    let d1 = framed(e1.expr.denominator(), &f);
    let d2 = framed(e2.expr.denominator(), &f);
    if d1.is_zero() || d2.is_zero() {
        return Err(PluckerError::Undefined);
    }
    let n1 = framed(e1.expr.numerator(), &f);
    let n2 = framed(e2.expr.numerator(), &f);
    Ok((&(&n1 * &d2) - &(&n2 * &d1)).is_zero())
}

/// Whether a polynomial in the `p_{i,j}` lies in the Plucker ideal.
pub fn vanishes_mod_plucker(poly: &LaurentPoly, n: u32) -> bool {
    framed(poly, &frame(n)).is_zero()
}

#[cfg(test)]
mod tests {
    use exact_algebra::rf;

    use super::*;

    fn pe(s: &str, n: u32) -> PluckerExpression {
        PluckerExpression::new(rf(s), n).unwrap()
    }

    #[test]
    fn relation_1234() {
        let r = plucker_relation(1, 2, 3, 4, 4).unwrap();
        assert_eq!(r, rf("p1,2*p3,4 - p1,3*p2,4 + p1,4*p2,3").numerator().clone());
        let r = plucker_relation(1, 2, 3, 5, 5).unwrap();
        assert_eq!(r, rf("p1,2*p3,5 - p1,3*p2,5 + p1,5*p2,3").numerator().clone());
        assert!(plucker_relation(1, 3, 2, 4, 4).is_err());
        assert!(plucker_relation(1, 2, 3, 5, 4).is_err());
    }

    #[test]
    fn all_relations_vanish() {
        for n in 4..=8 {
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        for l in k + 1..=n {
                            let r = plucker_relation(i, j, k, l, n).unwrap();
                            let e = PluckerExpression::new(RationalFunction::from_poly(r.clone()), n).unwrap();
                            assert!(parametrize(&e).is_zero());
                            assert!(vanishes_mod_plucker(&r, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parametrize_examples() {
        assert_eq!(parametrize(&pe("p1,2", 4)), rf("a1*b2 - a2*b1"));
        assert_eq!(parametrize(&pe("p1,3/p2,3", 4)), rf("(a1*b3 - a3*b1)/(a2*b3 - a3*b2)"));
        assert_eq!(parametrize(&pe("q*p1,2", 4)), rf("q*(a1*b2 - a2*b1)"));
    }

    #[test]
    fn identities_mod_plucker() {
        assert!(equal_mod_plucker(&pe("p1,3*p2,4", 4), &pe("p1,2*p3,4 + p1,4*p2,3", 4)).unwrap());
        assert!(!equal_mod_plucker(&pe("p1,2", 4), &pe("p1,3", 4)).unwrap());
        let zero = PluckerExpression::new(RationalFunction::from_poly(plucker_relation(1, 2, 3, 4, 4).unwrap()), 4)
            .unwrap();
        let bad = PluckerExpression::new(RationalFunction::new(LaurentPoly::one(), zero.expr.numerator().clone()).unwrap(), 4)
            .unwrap();
        assert_eq!(equal_mod_plucker(&bad, &pe("1", 4)), Err(PluckerError::Undefined));
        assert!(equal_mod_plucker(&pe("p1,2", 4), &pe("p1,2", 5)).is_err());
    }

    #[test]
    fn foreign_variables_are_rejected() {
        assert!(PluckerExpression::new(rf("p1,5"), 4).is_err());
        assert!(PluckerExpression::new(rf("p2,1"), 4).is_err());
        assert!(PluckerExpression::new(rf("q*p1,4 + T"), 4).is_ok());
    }

    #[test]
    fn dual_is_an_involution() {
        for n in 4..=9 {
            for i in 1..=n {
                for j in i + 1..=n {
                    let d = dual_index(n, (i, j));
                    assert!(d.0 < d.1 && d.1 <= n);
                    assert_eq!(dual_index(n, d), (i, j));
                }
            }
        }
    }
}
