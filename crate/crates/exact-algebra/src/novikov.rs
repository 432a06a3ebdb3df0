//! Truncated series in a formal variable `T` with rational exponents.
//!
//! Every variable carries a rational valuation; the variable named `T` has
//! valuation 1 unless overridden. Expanding a rational function groups its
//! terms by total valuation and strips `T` from the coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::AlgebraError;
use crate::poly::{Coeff, LaurentPoly, Monomial, Var};
use crate::rational::RationalFunction;

pub const T_VAR: &str = "T";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    terms: Vec<(BigRational, LaurentPoly)>,
    order: BigRational,
}

impl NovikovSeries {
    /// Build from unsorted `(exponent, coefficient)` pairs, merging equal
    /// exponents and dropping zero coefficients and exponents `>= order`.
    pub fn from_terms<I>(it: I, order: BigRational) -> Self
    where
        I: IntoIterator<Item = (BigRational, LaurentPoly)>,
    {
        let mut map: BTreeMap<BigRational, LaurentPoly> = BTreeMap::new();
        for (e, c) in it {
            if e >= order {
                continue;
            }
            let slot = map.entry(e).or_default();
            *slot = &*slot + &c;
        }
        NovikovSeries { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(), order }
    }

    pub fn terms(&self) -> &[(BigRational, LaurentPoly)] {
        &self.terms
    }

    pub fn order(&self) -> &BigRational {
        &self.order
    }

    pub fn coefficient(&self, exponent: &BigRational) -> LaurentPoly {
        self.terms
            .iter()
            .find(|(e, _)| e == exponent)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn leading_exponent(&self) -> Option<&BigRational> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn truncate(&self, order: &BigRational) -> Self {
        let o = order.min(&self.order).clone();
        NovikovSeries::from_terms(self.terms.iter().cloned(), o)
    }

    /// Sum, valid up to the smaller truncation order.
    pub fn add(&self, other: &Self) -> Self {
        let o = self.order.clone().min(other.order.clone());
        NovikovSeries::from_terms(self.terms.iter().chain(other.terms.iter()).cloned(), o)
    }

    /// Product; the result is exact below `min(o_f + v_g, o_g + v_f)` where
    /// `v` is the leading exponent.
    pub fn mul(&self, other: &Self) -> Self {
        let vf = self.leading_exponent().cloned();
        let vg = other.leading_exponent().cloned();
        let o = match (vf, vg) {
            (Some(vf), Some(vg)) => (&self.order + &vg).min(&other.order + &vf),
            // A zero factor is known to be zero up to its own order.
            (None, Some(vg)) => &self.order + &vg,
            (Some(vf), None) => &other.order + &vf,
            (None, None) => &self.order + &other.order,
        };
        let mut prods = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                prods.push((e1 + e2, c1 * c2));
            }
        }
        NovikovSeries::from_terms(prods, o)
    }
}

fn valuation(m: &Monomial, vals: &BTreeMap<Var, BigRational>) -> BigRational {
    let mut v = BigRational::zero();
    for (x, e) in m.pairs() {
        let w = match vals.get(x) {
            Some(w) => w.clone(),
            None if &**x == T_VAR => BigRational::from_integer(1.into()),
            None => continue,
        };
        v += w * BigRational::from_integer((*e).into());
    }
    v
}

// Drop terms of valuation >= bound.
fn truncate_poly(p: &LaurentPoly, vals: &BTreeMap<Var, BigRational>, bound: &BigRational) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms()
            .filter(|(m, _)| valuation(m, vals) < *bound)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn min_valuation(p: &LaurentPoly, vals: &BTreeMap<Var, BigRational>) -> Option<BigRational> {
    p.terms().map(|(m, _)| valuation(m, vals)).min()
}

/// Expand `expr` as a series in `T` modulo `T^order`.
pub fn novikov_expand(
    expr: &RationalFunction,
    valuations: &BTreeMap<Var, BigRational>,
    order: &BigRational,
) -> Result<NovikovSeries, AlgebraError> {
    let num = expr.numerator();
    let den = expr.denominator();
    let order = order.clone();
    if num.is_zero() {
        return Ok(NovikovSeries::from_terms(Vec::new(), order));
    }
    // Unit leading term of the denominator.
    let mut by_val: Vec<(BigRational, Monomial, Coeff)> =
        den.terms().map(|(m, c)| (valuation(m, valuations), m.clone(), c.clone())).collect();
    by_val.sort_by(|a, b| a.0.cmp(&b.0));
    if by_val.len() > 1 && by_val[0].0 == by_val[1].0 {
        return Err(AlgebraError::NonInvertibleDenominator);
    }
    let (v0, m0, c0) = by_val[0].clone();
    let lead_inv = LaurentPoly::term(m0.inv(), c0.recip());
    // den = c0*m0*(1 + r) with every term of r of positive valuation.
    let r = &(den * &lead_inv) - &LaurentPoly::one();
    let start = &(num * &lead_inv);
    let vn = min_valuation(num, valuations).expect("nonzero numerator") - &v0;
    let mut acc = truncate_poly(start, valuations, &order);
    if let Some(vr) = min_valuation(&r, valuations) {
        debug_assert!(vr.is_positive());
        let neg_r = -&r;
        let mut power = start.clone();
        let mut k = 1;
        // k-th correction has valuation >= vn + k*vr.
        while &vn + &vr * BigRational::from_integer(k.into()) < order {
            power = truncate_poly(&(&power * &neg_r), valuations, &order);
            if power.is_zero() {
                break;
            }
            acc = acc + power.clone();
            k += 1;
        }
    }
    let grouped = acc.terms().map(|(m, c)| {
        let e = valuation(m, valuations);
        let coeff = LaurentPoly::term(m.without(T_VAR), c.clone());
        (e, coeff)
    });
    Ok(NovikovSeries::from_terms(grouped.collect::<Vec<_>>(), order))
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T^{e}")?;
        }
        write!(f, " + O(T^{})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, parse_poly};
    use crate::poly::{int, var};

    fn vals(pairs: &[(&str, i64)]) -> BTreeMap<Var, BigRational> {
        pairs.iter().map(|(v, w)| (var(v), int(*w))).collect()
    }

    #[test]
    fn geometric_series_of_the_wall() {
        let e = parse("v/((u*v - 1)*z0)").unwrap();
        let s = novikov_expand(&e, &vals(&[("u", 1), ("v", 1), ("z0", 0)]), &int(6)).unwrap();
        let exps: Vec<_> = s.terms().iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(exps, vec![int(1), int(3), int(5)]);
        assert_eq!(s.coefficient(&int(1)), parse_poly("-v/z0").unwrap());
        assert_eq!(s.coefficient(&int(3)), parse_poly("-u*v^2/z0").unwrap());
        assert_eq!(s.coefficient(&int(5)), parse_poly("-u^2*v^3/z0").unwrap());
    }

    #[test]
    fn trivial_expansions() {
        let s = novikov_expand(&parse("u").unwrap(), &vals(&[("u", 2)]), &int(10)).unwrap();
        assert_eq!(s.terms().len(), 1);
        let s = novikov_expand(&parse("1/(1 - u)").unwrap(), &vals(&[("u", 1)]), &int(3)).unwrap();
        let exps: Vec<_> = s.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(
            exps,
            vec![
                (int(0), parse_poly("1").unwrap()),
                (int(1), parse_poly("u").unwrap()),
                (int(2), parse_poly("u^2").unwrap())
            ]
        );
    }

    #[test]
    fn t_is_stripped_and_counted() {
        let s = novikov_expand(&parse("T^2*u + T^-1").unwrap(), &vals(&[]), &int(5)).unwrap();
        assert_eq!(s.coefficient(&int(2)), parse_poly("u").unwrap());
        assert_eq!(s.coefficient(&int(-1)), parse_poly("1").unwrap());
    }

    #[test]
    fn tied_leading_terms_are_rejected() {
        let e = parse("1/(u - v)").unwrap();
        assert_eq!(
            novikov_expand(&e, &vals(&[("u", 1), ("v", 1)]), &int(4)),
            Err(AlgebraError::NonInvertibleDenominator)
        );
    }

    #[test]
    fn fractional_valuations() {
        let mut v = BTreeMap::new();
        v.insert(var("a"), BigRational::new(1.into(), 3.into()));
        let s = novikov_expand(&parse("1/(1 + a)").unwrap(), &v, &int(1)).unwrap();
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.coefficient(&BigRational::new(2.into(), 3.into())), parse_poly("a^2").unwrap());
    }
}
