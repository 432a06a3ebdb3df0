use std::collections::BTreeMap;

use exact_algebra::{rf, var, RationalFunction, Var};

use crate::{Model, Potential};

#[derive(Clone, Debug)]
pub struct OgPotentials {
    pub l0: Potential,
    pub l1: Potential,
    pub l2: Potential,
    /// The torus `L2'` in the coordinates `y1,1`, `y1,2`, `y1,3`.
    pub torus_prime: Potential,
    /// Mirror potential on `CP^3` minus the divisor, in `p0..p3`.
    pub rietsch: Potential,
    /// The torus of the smoothed `A_1` singularity, as seen in OG(1,4).
    pub og14: Potential,
}

fn mk(chart: &str, vars: &[&str], terms: &[&str], model: Model) -> Potential {
    Potential::from_terms(
        terms.iter().map(|t| rf(t)).collect(),
        chart,
        vars.iter().map(|s| s.to_string()).collect(),
        model,
    )
}

pub fn og_potentials() -> OgPotentials {
    OgPotentials {
        l0: mk("L0", &["u", "v", "z0"], &["v", "v*z0", "u^2/(z0*(u*v - 1))"], Model::Og15),
        l1: mk("L1", &["x1", "y1", "z1"], &["1/y1", "x1/y1", "z1/y1", "x1*z1/y1", "y1^2/(x1*z1)"], Model::Og15),
        l2: mk("L2", &["x2", "y2", "z2"], &["1/y2", "z2/y2", "y2^2*(x2 + 1)^2/(x2*z2)"], Model::Og15),
        torus_prime: mk(
            "L2'",
            &["y1,1", "y1,2", "y1,3"],
            &["1/y1,3", "y1,3/y1,2", "y1,2*(1 + y1,1)^2/y1,1"],
            Model::Og15,
        ),
        rietsch: mk("Rie", &["p0", "p1", "p2", "p3"], &["p1/p0", "p2^2/(p1*p2 - p0*p3)", "q*p1/p3"], Model::Og15),
        og14: mk("T_gamma2", &["y1,1", "y1,2"], &["y1,2*(1 + y1,1)^2/y1,1"], Model::Og14),
    }
}

/// `x2 = y1,1`, `y2 = y1,3`, `z2 = y1,3^2 / y1,2`.
pub fn og_bridge() -> BTreeMap<Var, RationalFunction> {
    [("x2", "y1,1"), ("y2", "y1,3"), ("z2", "y1,3^2/y1,2")].iter().map(|(k, v)| (var(k), rf(v))).collect()
}

/// Inverse of [`og_bridge`].
pub fn og_bridge_inverse() -> BTreeMap<Var, RationalFunction> {
    [("y1,1", "x2"), ("y1,3", "y2"), ("y1,2", "y2^2/z2")].iter().map(|(k, v)| (var(k), rf(v))).collect()
}

/// Homogeneous coordinates for the immersed chart, after the valuation map
/// of [`og_t_powers`].
pub fn og_rietsch_bindings() -> BTreeMap<Var, RationalFunction> {
    [("u", "p2/p3"), ("v", "p1/p0"), ("z0", "p0/p3")].iter().map(|(k, v)| (var(k), rf(v))).collect()
}

/// `T * W_L0(T u, T^-1 v, T^3 z0)` carries `q = T^3` on exactly one term.
pub fn og_t_powers() -> BTreeMap<Var, i32> {
    [("u", 1), ("v", -1), ("z0", 3)].iter().map(|(k, e)| (var(k), *e)).collect()
}
