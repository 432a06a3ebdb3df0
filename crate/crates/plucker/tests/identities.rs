use exact_algebra::{rf, RationalFunction};
use plucker::{covering_check, equal_mod_plucker, p, parametrize, random_point, PluckerExpression};
use proptest::prelude::*;

fn pe(s: &str, n: u32) -> PluckerExpression {
    PluckerExpression::new(rf(s), n).unwrap()
}

const W1: &str = "q*p3,4/p1,3 + q*p1,4*p2,3/(p1,2*p1,3) + p1,3/p2,3 + p1,2/p1,3 + p1,4*p2,3/(p3,4*p1,3) + p1,3/p1,4";
const W2: &str = "q*p2,4/p1,2 + p1,2*p3,4/(p2,3*p2,4) + p1,4/p2,4 + p2,4/p3,4 + p1,2*p3,4/(p1,4*p2,4) + p2,3/p2,4";
const WRIE4: &str = "q*p2,4/p1,2 + p1,3/p2,3 + p2,4/p3,4 + p1,3/p1,4";

#[test]
fn gr24_cluster_restrictions_agree() {
    assert!(equal_mod_plucker(&pe(W1, 4), &pe(W2, 4)).unwrap());
    assert!(equal_mod_plucker(&pe(W2, 4), &pe(WRIE4, 4)).unwrap());
    // Not an identity of rational functions: the relation is needed.
    assert!(!rf(W1).equal(&rf(W2)));
}

#[test]
fn random_points_separate_unequal_expressions() {
    // Oracle: evaluate both sides at exact points of the Grassmannian.
    let pt = random_point(4, 99).unwrap();
    let extra = [(exact_algebra::var("q"), exact_algebra::int(3))].into_iter().collect();
    assert_eq!(pt.eval(&rf(W1), &extra), pt.eval(&rf(W2), &extra));
    assert_ne!(pt.eval(&rf("p1,2"), &extra), pt.eval(&rf("p1,3"), &extra));
}

#[test]
fn covering_samples() {
    for n in [5, 6] {
        let r = covering_check(n, 1000, 2024).unwrap();
        assert_eq!(r.samples, 1000);
        assert!(r.failures.is_empty(), "n = {n}: {:?}", r.failures);
        assert!(r.degenerate_samples > 0 && r.constructed > 0);
    }
}

fn small_expr() -> impl Strategy<Value = RationalFunction> {
    let idx = (1u32..=5, 1u32..=5).prop_filter("distinct", |(i, j)| i != j);
    prop::collection::vec((idx.clone(), idx, -3i64..4), 1..4).prop_map(|ts| {
        ts.into_iter().fold(RationalFunction::zero(), |acc, ((i, j), (k, l), c)| {
            &acc + &(&(&p(i, j) / &p(k, l)) * &RationalFunction::from_int(c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parametrize_is_a_homomorphism(a in small_expr(), b in small_expr()) {
        let n = 5;
        let pa = parametrize(&PluckerExpression::new(a.clone(), n).unwrap());
        let pb = parametrize(&PluckerExpression::new(b.clone(), n).unwrap());
        let sum = parametrize(&PluckerExpression::new(&a + &b, n).unwrap());
        let prod = parametrize(&PluckerExpression::new(&a * &b, n).unwrap());
        prop_assert!(sum.equal(&(&pa + &pb)));
        prop_assert!(prod.equal(&(&pa * &pb)));
    }

    #[test]
    fn equality_is_an_equivalence(a in small_expr(), b in small_expr()) {
        let n = 5;
        let ea = PluckerExpression::new(a.clone(), n).unwrap();
        let eb = PluckerExpression::new(b.clone(), n).unwrap();
        prop_assert!(equal_mod_plucker(&ea, &ea).unwrap());
        prop_assert_eq!(equal_mod_plucker(&ea, &eb).unwrap(), equal_mod_plucker(&eb, &ea).unwrap());
        // Adding a relation multiple keeps the class.
        let rel = RationalFunction::from_poly(plucker::plucker_relation(1, 2, 4, 5, 5).unwrap());
        let shifted = PluckerExpression::new(&a + &(&rel * &b), n).unwrap();
        prop_assert!(equal_mod_plucker(&ea, &shifted).unwrap());
    }
}
