use exact_algebra::{var, Coeff, LaurentPoly, Monomial, RationalFunction};
use serde::Serialize;

use crate::error::KoszulError;

/// `Q(s)` with `s^2 = square`, presented by rewriting powers of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticExtension {
    pub symbol: String,
    #[serde(serialize_with = "as_string")]
    pub square: Coeff,
}

fn as_string<S: serde::Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

impl QuadraticExtension {
    /// `s` with `s^2 = -1`.
    pub fn sqrt_minus_one(symbol: &str) -> Self {
        QuadraticExtension { symbol: symbol.to_string(), square: Coeff::from_integer((-1).into()) }
    }

    pub fn generator(&self) -> RationalFunction {
        RationalFunction::var(&self.symbol)
    }

    /// Replace `s^k` by `square^(k div 2) s^(k mod 2)`.
    pub fn reduce_poly(&self, p: &LaurentPoly) -> LaurentPoly {
        let s = var(&self.symbol);
        let mut out = LaurentPoly::zero();
        for (m, c) in p.terms() {
            let k = m.exponent(&self.symbol);
            if (0..2).contains(&k) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = m.without(&self.symbol);
            let half = k.div_euclid(2);
            let factor = num_traits::pow(self.square.clone(), half.unsigned_abs() as usize);
            let factor = if half < 0 { factor.recip() } else { factor };
            out.add_term(rest.mul(&Monomial::pow_of(s.clone(), k.rem_euclid(2))), c * &factor);
        }
        out
    }

    /// Split `p = a + b s` with `a`, `b` free of `s`; `p` must be reduced.
    fn split(&self, p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let parts = p.coefficients_in(&self.symbol);
        let a = parts.get(&0).cloned().unwrap_or_else(LaurentPoly::zero);
        let b = parts.get(&1).cloned().unwrap_or_else(LaurentPoly::zero);
        (a, b)
    }

    /// Canonical representative: numerator of degree at most one in `s` and
    /// a denominator free of `s`, by multiplying through with the conjugate.
    pub fn reduce(&self, e: &RationalFunction) -> Result<RationalFunction, KoszulError> {
        let num = self.reduce_poly(e.numerator());
        let den = self.reduce_poly(e.denominator());
        let (a, b) = self.split(&den);
        if b.is_zero() {
            if a.is_zero() {
                return Err(KoszulError::Pole(e.to_string()));
            }
            return Ok(RationalFunction::new(num, a)?);
        }
        let s = LaurentPoly::var(&self.symbol);
        let conj = &a - &(&b * &s);
        let num = self.reduce_poly(&(&num * &conj));
        let den = self.reduce_poly(&(&den * &conj));
        if den.is_zero() {
            return Err(KoszulError::Pole(e.to_string()));
        }
        Ok(RationalFunction::new(num, den)?)
    }

    pub fn is_zero(&self, e: &RationalFunction) -> Result<bool, KoszulError> {
        Ok(self.reduce(e)?.is_zero())
    }
}

/// Reduction in `Q` itself, or in a quadratic extension when one is given.
pub fn reduce(ext: Option<&QuadraticExtension>, e: &RationalFunction) -> Result<RationalFunction, KoszulError> {
    match ext {
        Some(x) => x.reduce(e),
        None => Ok(e.clone()),
    }
}
