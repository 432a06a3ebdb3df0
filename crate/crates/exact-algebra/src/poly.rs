use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Var = Arc<str>;
pub type Coeff = BigRational;

pub fn var(name: &str) -> Var {
    Arc::from(name)
}

pub fn rat(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs with no zero exponents.
///
/// Ordering is pure lex with variable names as the priority order, so the
/// greatest term of a polynomial is its leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn pow_of(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: &str) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| &**w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| *e > 0)
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(v, e)| (v.clone(), sign * e)));
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True if `other` divides `self` with a nonnegative quotient.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.0.iter().all(|(v, e)| self.exponent(v) >= *e)
    }

    fn combine_with(&self, other: &Monomial, pick: fn(i32, i32) -> i32) -> Monomial {
        let names: BTreeSet<&Var> = self.0.iter().chain(other.0.iter()).map(|(v, _)| v).collect();
        Monomial(
            names
                .into_iter()
                .filter_map(|v| {
                    let e = pick(self.exponent(v), other.exponent(v));
                    (e != 0).then(|| (v.clone(), e))
                })
                .collect(),
        )
    }

    /// Componentwise minimum of exponents (absent variables count as 0).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.combine_with(other, std::cmp::min)
    }

    /// Componentwise maximum of exponents (absent variables count as 0).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.combine_with(other, std::cmp::max)
    }

    pub fn positive_part(&self) -> Monomial {
        Monomial(self.0.iter().filter(|(_, e)| *e > 0).cloned().collect())
    }

    /// The monomial `m` with `self = positive_part / m`.
    pub fn negative_part(&self) -> Monomial {
        Monomial(self.0.iter().filter(|(_, e)| *e < 0).map(|(v, e)| (v.clone(), -e)).collect())
    }

    pub fn without(&self, v: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| &**w != v).cloned().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => return ea.cmp(&0),
                (None, Some((_, eb))) => return 0.cmp(eb),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::term(Monomial::var(var(name)), Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Coeff::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// A constant (possibly zero) polynomial.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(Coeff::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    pub fn degree_in(&self, v: &str) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: &str) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// All exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_polynomial())
    }

    pub fn scale(&self, c: &Coeff) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Greatest common monomial divisor of all terms (exponents may be negative).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for m in it {
            g = g.gcd(m);
        }
        g
    }

    /// Least common multiple of the negative parts of all terms.
    pub fn denominator_monomial(&self) -> Monomial {
        self.terms.keys().fold(Monomial::one(), |acc, m| acc.lcm(&m.negative_part()))
    }

    pub fn partial(&self, v: &str) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                let dm = m.mul(&Monomial::pow_of(var(v), -1));
                out.add_term(dm, c * int(e as i64));
            }
        }
        out
    }

    /// Coefficients with respect to `v`: exponent -> coefficient free of `v`.
    pub fn coefficients_in(&self, v: &str) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.entry(e).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Coeff) -> Coeff) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluate with a user supplied ring: `lift` maps coefficients, `value` maps
    /// `(variable, exponent)` to the corresponding power.
    pub fn eval_with<R, F, G>(&self, zero: R, lift: F, mut value: G) -> R
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        F: Fn(&Coeff) -> R,
        G: FnMut(&Var, i32) -> R,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = lift(c);
            for (v, e) in m.pairs() {
                t = t * value(v, *e);
            }
            acc = acc + t;
        }
        acc
    }

    /// Replace variables by Laurent polynomials. Negative exponents require the
    /// image to be a monomial; returns `None` otherwise.
    pub fn substitute_poly(&self, map: &BTreeMap<Var, LaurentPoly>) -> Option<LaurentPoly> {
        let mut cache: BTreeMap<(Var, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(c.clone());
            for (v, e) in m.pairs() {
                let p = match map.get(v) {
                    None => LaurentPoly::monomial(Monomial::pow_of(v.clone(), *e)),
                    Some(img) => {
                        if let Some(p) = cache.get(&(v.clone(), *e)) {
                            p.clone()
                        } else {
                            let p = if *e >= 0 {
                                img.pow(*e as u32)
                            } else {
                                let (mono, coef) = img.single_term()?;
                                LaurentPoly::term(mono.pow(*e), pow_coeff(&coef, *e))
                            };
                            cache.insert((v.clone(), *e), p.clone());
                            p
                        }
                    }
                };
                t = &t * &p;
            }
            out = out + t;
        }
        Some(out)
    }

    pub fn single_term(&self) -> Option<(Monomial, Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (m.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Rescale so coefficients are coprime integers with positive leading coefficient.
    /// Returns `(scalar, primitive)` with `self = scalar * primitive`.
    pub fn primitive_part(&self) -> (Coeff, LaurentPoly) {
        if self.is_zero() {
            return (Coeff::one(), LaurentPoly::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut s = BigRational::new(num_gcd, den_lcm);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        let inv = s.recip();
        (s, self.scale(&inv))
    }
}

pub(crate) fn pow_coeff(c: &Coeff, e: i32) -> Coeff {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
