use std::collections::BTreeMap;

use exact_algebra::{int, novikov_expand, parse, rat, var, Coeff, LaurentPoly, Monomial, RationalFunction, Var};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0usize..4, -2i32..3), 0..3)
        .prop_map(|ps| Monomial::from_pairs(ps.into_iter().map(|(i, e)| (var(VARS[i]), e))))
}

fn poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -4i64..5, 1i64..4), 1..=max_terms)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(m, n, d)| (m, rat(n, d)))))
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn expression() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((poly(3), nonzero_poly(2), nonzero_poly(2)), 1..3).prop_map(|parts| {
        parts.into_iter().fold(RationalFunction::zero(), |acc, (n, d1, d2)| {
            let den = &d1 * &d2;
            &acc + &RationalFunction::new(n, den).unwrap()
        })
    })
}

fn lift(c: &Coeff) -> Complex64 {
    Complex64::new(c.to_f64().unwrap(), 0.0)
}

fn eval(r: &RationalFunction, pt: &BTreeMap<&str, Complex64>) -> Option<Complex64> {
    let value = |v: &Var, e: i32| pt.get(&**v).copied().unwrap_or(Complex64::new(1.0, 0.0)).powi(e);
    let (n, d) = r.eval_with(Complex64::new(0.0, 0.0), lift, value);
    if d.norm() < 1e-6 {
        None
    } else {
        Some(n / d)
    }
}

fn point() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.1f64..10.0, 0.0f64..std::f64::consts::TAU), 4)
        .prop_map(|v| v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_a_projection(e in expression()) {
        let n = e.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(n, e);
    }

    #[test]
    fn print_parse_round_trip(e in expression()) {
        let back = parse(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn equality_respects_substitution(e in expression(), img in nonzero_poly(2), k in 0usize..4) {
        // Rewrite e into an equal but differently arranged form.
        let t = RationalFunction::from_poly(img.clone());
        let f = &(&e + &t) - &t;
        prop_assert!(e.equal(&f));
        let mut sigma = BTreeMap::new();
        sigma.insert(var(VARS[k]), RationalFunction::from_poly(img));
        if let (Ok(a), Ok(b)) = (e.substitute(&sigma), f.substitute(&sigma)) {
            prop_assert!(a.equal(&b));
        }
    }

    #[test]
    fn mixed_partials_commute(e in expression()) {
        let xy = e.partial("x").partial("y");
        let yx = e.partial("y").partial("x");
        prop_assert!(xy.equal(&yx));
    }

    #[test]
    fn derivative_matches_finite_difference(e in expression(), pt in point(), k in 0usize..4) {
        let h = 1e-6;
        let mut at: BTreeMap<&str, Complex64> = VARS.iter().copied().zip(pt.iter().copied()).collect();
        let d = e.partial(VARS[k]);
        let exact = eval(&d, &at);
        let x0 = at[VARS[k]];
        at.insert(VARS[k], x0 + h);
        let fp = eval(&e, &at);
        at.insert(VARS[k], x0 - h);
        let fm = eval(&e, &at);
        if let (Some(exact), Some(fp), Some(fm)) = (exact, fp, fm) {
            // Skip points numerically close to a pole, where the difference
            // quotient itself is ill-conditioned.
            let scale = fp.norm().max(fm.norm());
            prop_assume!(scale < 1e6);
            let fd = (fp - fm) / (2.0 * h);
            prop_assert!((exact - fd).norm() <= 1e-5 * (1.0 + exact.norm()), "exact {} fd {}", exact, fd);
        }
    }

    #[test]
    fn arithmetic_agrees_with_evaluation(a in expression(), b in expression(), pt in point()) {
        let at: BTreeMap<&str, Complex64> = VARS.iter().copied().zip(pt.iter().copied()).collect();
        if let (Some(va), Some(vb), Some(vs), Some(vp)) =
            (eval(&a, &at), eval(&b, &at), eval(&(&a + &b), &at), eval(&(&a * &b), &at))
        {
            prop_assume!(va.norm() < 1e6 && vb.norm() < 1e6);
            prop_assert!((va + vb - vs).norm() <= 1e-6 * (1.0 + vs.norm()));
            prop_assert!((va * vb - vp).norm() <= 1e-6 * (1.0 + vp.norm()));
        }
    }

    #[test]
    fn novikov_expansion_is_multiplicative(
        n1 in poly(2), n2 in poly(2), c1 in 1i64..4, c2 in 1i64..4, order in 2i64..6,
    ) {
        // Denominators with a unit constant term at valuation 0.
        let vals: BTreeMap<Var, BigRational> =
            [("x", 1), ("y", 2), ("z", 1), ("w", 3)].iter().map(|(v, w)| (var(v), int(*w))).collect();
        let nonneg = |p: &LaurentPoly| p.is_polynomial();
        prop_assume!(nonneg(&n1) && nonneg(&n2));
        let f = RationalFunction::new(n1, parse(&format!("{c1} + x*y - z")).unwrap().numerator().clone()).unwrap();
        let g = RationalFunction::new(n2, parse(&format!("{c2} - w + x^2")).unwrap().numerator().clone()).unwrap();
        let o = int(order);
        let ef = novikov_expand(&f, &vals, &o).unwrap();
        let eg = novikov_expand(&g, &vals, &o).unwrap();
        let efg = novikov_expand(&(&f * &g), &vals, &o).unwrap();
        let prod = ef.mul(&eg);
        prop_assert_eq!(efg.truncate(prod.order()), prod.truncate(&o));
    }
}
