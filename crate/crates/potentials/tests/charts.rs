use std::collections::BTreeMap;

use exact_algebra::{int, novikov_expand, rf, var, RationalFunction, Var};
use potentials::{gr24_chart_potentials, og_bridge, og_bridge_inverse, og_potentials};

fn bind(pairs: &[(&str, &str)]) -> BTreeMap<Var, RationalFunction> {
    pairs.iter().map(|(k, v)| (var(k), rf(v))).collect()
}

#[test]
fn gr24_tori_glue_to_the_immersed_chart() {
    let [l0, l1, l2] = gr24_chart_potentials();
    let to1 = bind(&[("x1", "u*v - 1"), ("y1", "u"), ("z1", "z0"), ("w1", "w0")]);
    let to2 = bind(&[("x2", "u*v - 1"), ("y2", "1/v"), ("z2", "z0"), ("w2", "w0")]);
    assert!(l1.expr.substitute(&to1).unwrap().equal(&l0.expr));
    assert!(l2.expr.substitute(&to2).unwrap().equal(&l0.expr));
    let from2 = bind(&[("x1", "x2"), ("y1", "y2*(x2 + 1)"), ("z1", "z2"), ("w1", "w2")]);
    assert!(l1.expr.substitute(&from2).unwrap().equal(&l2.expr));
}

#[test]
fn og_tori_glue_to_the_immersed_chart() {
    let og = og_potentials();
    let to1 = bind(&[("x1", "u*v - 1"), ("y1", "u"), ("z1", "z0")]);
    let to2 = bind(&[("x2", "u*v - 1"), ("y2", "1/v"), ("z2", "z0")]);
    assert!(og.l1.expr.substitute(&to1).unwrap().equal(&og.l0.expr));
    assert!(og.l2.expr.substitute(&to2).unwrap().equal(&og.l0.expr));
    assert!(og.torus_prime.expr.substitute(&og_bridge_inverse()).unwrap().equal(&og.l2.expr));
    assert!(og.l2.expr.substitute(&og_bridge()).unwrap().equal(&og.torus_prime.expr));
    // The last torus term is the OG(1,4) potential.
    assert_eq!(og.torus_prime.terms[2], og.og14.expr);
}

#[test]
fn og_wall_term_expands_geometrically() {
    let vals: BTreeMap<Var, _> = [("u", int(1))].into_iter().map(|(k, v)| (var(k), v)).collect();
    let e = novikov_expand(&rf("u^2/(z0*(u*v - 1))"), &vals, &int(7)).unwrap();
    for i in 0..5 {
        let c = e.coefficient(&int(2 + i));
        let want = rf(&format!("-(u*v)^{i}*u^2/z0")).as_laurent().unwrap();
        // Coefficients carry the T-stripped monomials.
        assert_eq!(c, want.map_coefficients(|x| x.clone()), "i = {i}");
    }
}
