use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::gcd::{div_exact, gcd, strip_monomial};
use crate::poly::{int, Coeff, LaurentPoly, Monomial, Var};

/// Exact quotient of two polynomials, kept in canonical form.
///
/// Canonical form: numerator and denominator are polynomials with no common
/// monomial or polynomial factor, and the denominator is a primitive integer
/// polynomial whose leading term is positive.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalize_parts(num, den))
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        RationalFunction { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        RationalFunction { num: LaurentPoly::var(name), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::normalize_parts(p, LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// The function as a Laurent polynomial, when its denominator is a monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let (m, c) = self.den.single_term()?;
        Some(self.num.mul_monomial(&m.inv()).scale(&c.recip()))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Canonical form of `num / den`; `den` must be nonzero.
    fn normalize_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (mn, mut n) = strip_monomial(&num);
        let (md, mut d) = strip_monomial(&den);
        let shift = mn.div(&md);
        if !d.is_constant() && !n.is_constant() {
            if let Some(q) = div_exact(&n, &d) {
                n = q;
                d = LaurentPoly::one();
            } else {
                let g = gcd(&n, &d);
                if !g.is_one() {
                    n = div_exact(&n, &g).expect("gcd divides numerator");
                    d = div_exact(&d, &g).expect("gcd divides denominator");
                }
            }
        }
        let (s, dp) = d.primitive_part();
        let n = n.mul_monomial(&shift.positive_part()).scale(&s.recip());
        let d = dp.mul_monomial(&shift.negative_part());
        RationalFunction { num: n, den: d }
    }

    /// Re-derive the canonical form (idempotent).
    pub fn normalize(&self) -> Self {
        Self::normalize_parts(self.num.clone(), self.den.clone())
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.normalize()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i32) -> Result<Self, AlgebraError> {
        if k >= 0 {
            Ok(RationalFunction { num: self.num.pow(k as u32), den: self.den.pow(k as u32) }
                .normalize_signs())
        } else {
            self.recip()?.pow(-k)
        }
    }

    // Powers of a canonical form are canonical up to the denominator sign.
    fn normalize_signs(self) -> Self {
        let (s, d) = self.den.primitive_part();
        RationalFunction { num: self.num.scale(&s.recip()), den: d }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize_parts(&self.num + &other.num, self.den.clone());
        }
        let (ma, pa) = strip_monomial(&self.den);
        let (mb, pb) = strip_monomial(&other.den);
        let l = ma.lcm(&mb);
        let (fa, fb, p) = if pa == pb {
            (LaurentPoly::one(), LaurentPoly::one(), pa)
        } else if pa.is_constant() {
            (pb.clone(), pa.clone(), pb)
        } else if pb.is_constant() {
            (pb.clone(), pa.clone(), pa)
        } else {
            let g = gcd(&pa, &pb);
            let fa = div_exact(&pb, &g).expect("gcd divides");
            let fb = div_exact(&pa, &g).expect("gcd divides");
            let p = &pa * &fa;
            (fa, fb, p)
        };
        let num = &(&self.num * &fa).mul_monomial(&l.div(&ma))
            + &(&other.num * &fb).mul_monomial(&l.div(&mb));
        let den = p.mul_monomial(&l);
        Self::normalize_parts(num, den)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_monomial() && other.den.is_monomial() && (self.num.is_monomial() || other.num.is_monomial()) {
            return Self::normalize_parts(&self.num * &other.num, &self.den * &other.den);
        }
        // Cross-cancel before multiplying to keep sizes down.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = div_exact(&self.num, &g1).expect("gcd divides");
        let d2 = div_exact(&other.den, &g1).expect("gcd divides");
        let n2 = div_exact(&other.num, &g2).expect("gcd divides");
        let d1 = div_exact(&self.den, &g2).expect("gcd divides");
        Self::normalize_parts(&n1 * &n2, &d1 * &d2)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact equality test by cross-multiplication.
    pub fn equal(&self, other: &Self) -> bool {
        if self == other {
            return true;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// Partial derivative by the quotient rule.
    pub fn partial(&self, v: &str) -> Self {
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::normalize_parts(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalize_parts(num, self.den.pow(2))
    }

    /// Substitute variables by rational functions; unbound variables pass through.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Self, AlgebraError> {
        let mut ev = Evaluator::new(bindings);
        let (nn, nd) = ev.eval(&self.num);
        let (dn, dd) = ev.eval(&self.den);
        if dn.is_zero() {
            return Err(AlgebraError::SingularSubstitution);
        }
        let a = RationalFunction::normalize_parts(nn, nd);
        let b = RationalFunction::normalize_parts(dd, dn);
        Ok(a.mul_ref(&b))
    }

    /// Substitute with string keys, a convenience for literal binding tables.
    pub fn substitute_str(&self, bindings: &[(&str, RationalFunction)]) -> Result<Self, AlgebraError> {
        let map: BTreeMap<Var, RationalFunction> =
            bindings.iter().map(|(k, v)| (crate::poly::var(k), v.clone())).collect();
        self.substitute(&map)
    }

    /// Evaluate in any field given a coefficient lift and variable values.
    pub fn eval_with<R, F, G>(&self, zero: R, lift: F, value: G) -> (R, R)
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        F: Fn(&Coeff) -> R + Copy,
        G: FnMut(&Var, i32) -> R + Copy,
    {
        (
            self.num.eval_with(zero.clone(), lift, value),
            self.den.eval_with(zero, lift, value),
        )
    }
}

/// Evaluates polynomials at rational-function values while sharing a common
/// denominator, so no normalization happens term by term.
struct Evaluator<'a> {
    bindings: &'a BTreeMap<Var, RationalFunction>,
    powers: HashMap<(Var, bool, u32), LaurentPoly>,
}

impl<'a> Evaluator<'a> {
    fn new(bindings: &'a BTreeMap<Var, RationalFunction>) -> Self {
        Evaluator { bindings, powers: HashMap::new() }
    }

    // `top` selects numerator (true) or denominator (false) of the binding.
    fn power(&mut self, v: &Var, top: bool, k: u32) -> LaurentPoly {
        if k == 0 {
            return LaurentPoly::one();
        }
        if let Some(p) = self.powers.get(&(v.clone(), top, k)) {
            return p.clone();
        }
        let base = match self.bindings.get(v) {
            Some(r) => {
                if top {
                    r.num.clone()
                } else {
                    r.den.clone()
                }
            }
            None => {
                if top {
                    LaurentPoly::var(v)
                } else {
                    LaurentPoly::one()
                }
            }
        };
        let p = if k == 1 { base } else { &self.power(v, top, k - 1) * &base };
        self.powers.insert((v.clone(), top, k), p.clone());
        p
    }

    /// Returns `(N, D)` with `p(bindings) = N / D`.
    fn eval(&mut self, p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let mut lo: BTreeMap<Var, i32> = BTreeMap::new();
        let mut hi: BTreeMap<Var, i32> = BTreeMap::new();
        for (m, _) in p.terms() {
            for (v, e) in m.pairs() {
                let l = lo.entry(v.clone()).or_insert(0);
                *l = (*l).min(*e);
                let h = hi.entry(v.clone()).or_insert(0);
                *h = (*h).max(*e);
            }
        }
        let mut num = LaurentPoly::zero();
        for (m, c) in p.terms() {
            let mut t = LaurentPoly::constant(c.clone());
            for (v, l) in &lo {
                let h = hi[v];
                let e = m.exponent(v);
                let up = (e - l) as u32;
                let down = (h - e) as u32;
                if up > 0 {
                    t = &t * &self.power(v, true, up);
                }
                if down > 0 {
                    t = &t * &self.power(v, false, down);
                }
            }
            num = num + t;
        }
        // Since lo <= 0 <= hi, the common denominator is prod_v n_v^-lo * d_v^hi.
        let mut den = LaurentPoly::one();
        for (v, l) in &lo {
            let h = hi[v];
            if *l < 0 {
                den = &den * &self.power(v, true, (-l) as u32);
            }
            if h > 0 {
                den = &den * &self.power(v, false, h as u32);
            }
        }
        (num, den)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Monomial> for RationalFunction {
    fn from(m: Monomial) -> Self {
        RationalFunction::from_poly(LaurentPoly::monomial(m))
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_ref(rhs)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        self.add_ref(&rhs)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_ref(&-rhs)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_ref(rhs)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        self.mul_ref(&rhs)
    }
}

/// Panics on division by the zero function; use `checked_div` otherwise.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.len() > 1 || !self.den.leading_term().map(|(_, c)| c.is_one()).unwrap_or(true) {
            write!(f, "/({})", self.den)
        } else {
            let m = self.den.leading_term().unwrap().0;
            if m.pairs().len() > 1 {
                write!(f, "/({})", self.den)
            } else {
                write!(f, "/{}", self.den)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn r(s: &str) -> RationalFunction {
        parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(r("(2*u*v - 2)/(2*z)").to_string(), "(u*v - 1)/z");
        assert_eq!(r("(u^2*v)/u"), r("u*v"));
        assert_eq!(r("0/(u*v - 1)"), RationalFunction::zero());
        assert_eq!(r("(u^2 - 1)/(u + 1)"), r("u - 1"));
        assert_eq!(r("1/(1 - u)"), r("-1/(u - 1)"));
    }

    #[test]
    fn normalize_is_idempotent() {
        let x = r("(x^2*y - y)/(3*x^2 + 6*x + 3) + z^-1");
        assert!(x.is_canonical());
        assert_eq!(x.normalize(), x);
    }

    #[test]
    fn substitution_example() {
        let e = r("1/(x1*y1*z1)");
        let out = e
            .substitute_str(&[("x1", r("u*v - 1")), ("y1", r("u")), ("z1", r("z0"))])
            .unwrap();
        assert_eq!(out, r("1/((u*v - 1)*u*z0)"));
        let uv = r("u*v");
        let g = uv
            .substitute_str(&[("u", r("(1 - u*v)*u")), ("v", r("v/(1 - u*v)"))])
            .unwrap();
        assert_eq!(g, uv);
        assert_eq!(r("x").substitute_str(&[("x", r("x"))]).unwrap(), r("x"));
    }

    #[test]
    fn singular_substitution_is_rejected() {
        let e = r("1/(u - v)");
        assert!(matches!(
            e.substitute_str(&[("u", r("v"))]),
            Err(AlgebraError::SingularSubstitution)
        ));
    }

    #[test]
    fn equality_examples() {
        assert!(r("1/((u*v - 1)*u*z) + 1/(u*z)").equal(&r("v/((u*v - 1)*z)")));
        assert!(!r("u/v").equal(&r("v/u")));
        assert!(r("(u*v - 1)/(u*v - 1)").equal(&RationalFunction::one()));
    }

    #[test]
    fn partial_examples() {
        let f = r("u + v/((u*v - 1)*z)");
        assert!(f.partial("u").equal(&r("1 - v^2/((u*v - 1)^2*z)")));
        assert!(r("u").partial("w").is_zero());
        assert_eq!(r("1/x").partial("x"), r("-1/x^2"));
    }
}
