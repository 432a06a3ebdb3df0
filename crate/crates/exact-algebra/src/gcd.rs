//! Exact division and greatest common divisors in the Laurent polynomial ring.
//!
//! Monomials are units, so every polynomial is first split into a monomial
//! factor and a part with no monomial divisor. The gcd of the latter is found
//! by the heuristic integer-evaluation method, falling back to a recursive
//! primitive pseudo-remainder sequence when the heuristic gives up.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{LaurentPoly, Monomial, Var};

/// Split `p = m * q` where `q` is a polynomial with no monomial factor.
pub fn strip_monomial(p: &LaurentPoly) -> (Monomial, LaurentPoly) {
    let m = p.monomial_content();
    (m.clone(), p.mul_monomial(&m.inv()))
}

fn div_exact_poly(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    if let Some(c) = b.as_constant() {
        return Some(a.scale(&c.recip()));
    }
    let (lm_b, lc_b) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    // An exact quotient has degree deg(a) - deg(b) in every variable; any
    // quotient term outside that box proves b does not divide a. This also
    // stops lex division from wandering off when the answer is no.
    let mut bounds = Vec::new();
    for v in a.variables().union(&b.variables()) {
        let hi = a.degree_in(v) - b.degree_in(v);
        let lo = a.min_degree_in(v) - b.min_degree_in(v);
        if hi < lo {
            return None;
        }
        bounds.push((v.clone(), lo, hi));
    }
    let mut r = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some((lm_r, lc_r)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        if !lm_r.divisible_by(&lm_b) {
            return None;
        }
        let tm = lm_r.div(&lm_b);
        if bounds.iter().any(|(v, lo, hi)| {
            let e = tm.exponent(v);
            e < *lo || e > *hi
        }) {
            return None;
        }
        let tc = lc_r / &lc_b;
        let t = LaurentPoly::term(tm, tc);
        r = &r - &(&t * b);
        q = q + t;
    }
    Some(q)
}

/// Exact quotient `a / b` in the Laurent ring, or `None` if `b` does not divide `a`.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let (ma, pa) = strip_monomial(a);
    let (mb, pb) = strip_monomial(b);
    let q = div_exact_poly(&pa, &pb)?;
    Some(q.mul_monomial(&ma.div(&mb)))
}

fn shared_variables(a: &LaurentPoly, b: &LaurentPoly) -> Vec<Var> {
    let va = a.variables();
    let vb: BTreeSet<Var> = b.variables();
    va.intersection(&vb).cloned().collect()
}

/// gcd of polynomials without monomial factors; result is primitive.
fn gcd_stripped(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.primitive_part().1;
    }
    if b.is_zero() {
        return a.primitive_part().1;
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    let (_, pa) = a.primitive_part();
    let (_, pb) = b.primitive_part();
    if pa == pb {
        return pa;
    }
    if pa.len() <= pb.len() {
        if div_exact_poly(&pb, &pa).is_some() {
            return pa;
        }
    } else if div_exact_poly(&pa, &pb).is_some() {
        return pb;
    }
    let shared = shared_variables(&pa, &pb);
    let Some(x) = shared.first().cloned() else {
        return LaurentPoly::one();
    };
    let vars: Vec<Var> = pa.variables().union(&pb.variables()).cloned().collect();
    if let Some(h) = heu_gcd(&pa, &pb, &vars) {
        return h.primitive_part().1;
    }
    let ca = content_in(&pa, &x);
    let cb = content_in(&pb, &x);
    let ppa = div_exact_poly(&pa, &ca).expect("content divides");
    let ppb = div_exact_poly(&pb, &cb).expect("content divides");
    let c = gcd_stripped(&ca, &cb);
    let g = prs_gcd(ppa, ppb, &x);
    (&c * &g).primitive_part().1
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in(p: &LaurentPoly, x: &str) -> LaurentPoly {
    let coeffs = p.coefficients_in(x);
    let mut g = LaurentPoly::zero();
    for c in coeffs.values() {
        let (_, s) = strip_monomial(c);
        g = if g.is_zero() { s.primitive_part().1 } else { gcd_stripped(&g, &s) };
        if g.is_one() {
            break;
        }
    }
    // Monomial factors common to all coefficients.
    let mono = coeffs.values().fold(None::<Monomial>, |acc, c| {
        let mc = c.monomial_content();
        Some(match acc {
            None => mc,
            Some(a) => a.gcd(&mc),
        })
    });
    match mono {
        Some(m) => g.mul_monomial(&m),
        None => g,
    }
}

fn primitive_in(p: &LaurentPoly, x: &str) -> LaurentPoly {
    let c = content_in(p, x);
    div_exact_poly(p, &c).expect("content divides").primitive_part().1
}

fn pseudo_remainder(f: &LaurentPoly, g: &LaurentPoly, x: &str) -> LaurentPoly {
    let dg = g.degree_in(x);
    let lc_g = g.coefficients_in(x).remove(&dg).unwrap_or_else(LaurentPoly::zero);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let lc_r = r.coefficients_in(x).remove(&dr).unwrap_or_else(LaurentPoly::zero);
        let shift = LaurentPoly::monomial(Monomial::pow_of(crate::poly::var(x), dr - dg));
        r = &(&lc_g * &r) - &(&(&lc_r * &shift) * g);
        // Keep coefficients small.
        if !r.is_zero() {
            r = r.primitive_part().1;
        }
    }
    r
}

fn prs_gcd(a: LaurentPoly, b: LaurentPoly, x: &str) -> LaurentPoly {
    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    if g.degree_in(x) == 0 {
        return LaurentPoly::one();
    }
    loop {
        let r = pseudo_remainder(&f, &g, x);
        if r.is_zero() {
            return primitive_in(&g, x);
        }
        if r.degree_in(x) == 0 {
            return LaurentPoly::one();
        }
        f = g;
        g = primitive_in(&r, x);
    }
}

fn max_norm(p: &LaurentPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn integer_content(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

// Substitute the integer `xi` for `x`.
fn eval_at(p: &LaurentPoly, x: &str, xi: &BigInt) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(x);
        let k = num_traits::pow(xi.clone(), e as usize);
        out.add_term(m.without(x), c * BigRational::from_integer(k));
    }
    out
}

// Inverse of `eval_at` on symmetric base-`xi` digits.
fn interpolate(h: &LaurentPoly, x: &Var, xi: &BigInt) -> LaurentPoly {
    let half = xi / 2;
    let mut out = LaurentPoly::zero();
    for (m, c) in h.terms() {
        let mut c = c.numer().clone();
        let mut i = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                out.add_term(m.mul(&Monomial::pow_of(x.clone(), i)), BigRational::from_integer(d.clone()));
            }
            c = (c - d) / xi;
            i += 1;
        }
    }
    out
}

/// Heuristic gcd of integer polynomials (nonnegative exponents) in `vars`.
/// Returns `None` when the evaluation points keep failing.
fn heu_gcd(f: &LaurentPoly, g: &LaurentPoly, vars: &[Var]) -> Option<LaurentPoly> {
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let cf = integer_content(f);
    let cg = integer_content(g);
    let c = BigRational::from_integer(cf.gcd(&cg));
    let f = f.scale(&BigRational::from_integer(cf).recip());
    let g = g.scale(&BigRational::from_integer(cg).recip());
    let Some((x, rest)) = vars.split_first() else {
        return Some(LaurentPoly::constant(c));
    };
    if !f.contains_var(x) && !g.contains_var(x) {
        return heu_gcd(&f, &g, rest).map(|h| h.scale(&c));
    }
    let lc = |p: &LaurentPoly| -> BigInt {
        p.coefficients_in(x)
            .into_iter()
            .next_back()
            .map(|(_, q)| max_norm(&q))
            .unwrap_or_else(BigInt::one)
    };
    let nf = max_norm(&f);
    let ng = max_norm(&g);
    let b: BigInt = nf.clone().min(ng.clone()) * 2 + 29;
    let mut xi = b.clone().min(b.sqrt() * 99).max(
        (nf / lc(&f).max(BigInt::one())).min(ng / lc(&g).max(BigInt::one())) * 2 + 2,
    );
    for _ in 0..6 {
        let ff = eval_at(&f, x, &xi);
        let gg = eval_at(&g, x, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let h = heu_gcd(&ff, &gg, rest)?;
            let cand = interpolate(&h, x, &xi);
            if !cand.is_zero() {
                let cand = cand.scale(&BigRational::from_integer(integer_content(&cand)).recip());
                if div_exact_poly(&f, &cand).is_some() && div_exact_poly(&g, &cand).is_some() {
                    return Some(cand.scale(&c));
                }
            }
        }
        xi = (&xi * BigInt::from(73794) * xi.sqrt().sqrt()) / BigInt::from(27011);
    }
    None
}

/// Greatest common divisor in the Laurent ring, normalized to a primitive
/// polynomial with positive leading coefficient and no monomial factor.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (_, sa) = strip_monomial(a);
    let (_, sb) = strip_monomial(b);
    gcd_stripped(&sa, &sb)
}
