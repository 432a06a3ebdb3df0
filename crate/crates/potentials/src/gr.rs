use std::collections::BTreeSet;

use exact_algebra::{rf, RationalFunction};
use gc_combinatorics::validate_pairs;

use crate::error::PotentialError;
use crate::{Model, Potential};

/// Torus variables with the boundary conventions `z_{2,0} = 1` and
/// `z_{1,n-1} = T^n`.
struct Z {
    n: u32,
}

impl Z {
    fn one(&self, j: u32) -> RationalFunction {
        if j == self.n - 1 {
            RationalFunction::var("T").pow(self.n as i32).unwrap()
        } else {
            RationalFunction::var(&format!("z1,{j}"))
        }
    }

    fn two(&self, j: u32) -> RationalFunction {
        if j == 0 {
            RationalFunction::one()
        } else {
            RationalFunction::var(&format!("z2,{j}"))
        }
    }
}

fn ratio(a: RationalFunction, b: RationalFunction) -> RationalFunction {
    &a / &b
}

fn collect_variables(terms: &[RationalFunction]) -> Vec<String> {
    let vars: BTreeSet<String> = terms
        .iter()
        .flat_map(|t| t.variables())
        .filter(|v| &**v != "T" && &**v != "q")
        .map(|v| v.to_string())
        .collect();
    vars.into_iter().collect()
}

fn torus_terms(n: u32) -> Vec<RationalFunction> {
    let z = Z { n };
    let mut terms = vec![z.two(1), ratio(z.one(n - 1), z.one(n - 2))];
    for j in 1..=n - 3 {
        terms.push(ratio(z.one(j + 1), z.one(j)));
        terms.push(ratio(z.two(j + 1), z.two(j)));
    }
    for j in 1..=n - 2 {
        terms.push(ratio(z.one(j), z.two(j)));
    }
    terms
}

/// Potential of the Gelfand-Cetlin torus fiber of Gr(2,n), `3n - 6` terms.
pub fn gc_torus_potential(n: u32) -> Result<Potential, PotentialError> {
    if n < 4 {
        return Err(gc_combinatorics::GcError::UnsupportedN(n).into());
    }
    let terms = torus_terms(n);
    let vars = collect_variables(&terms);
    Ok(Potential::from_terms(terms, "torus", vars, Model::Gr2n(n)))
}

/// Potential of the immersed Lagrangian of `pairs`: each pair trades six
/// torus terms (the edges of its block) for four terms in `u_i`, `v_i`.
pub fn immersed_potential(n: u32, pairs: &[(u32, u32)]) -> Result<Potential, PotentialError> {
    if n < 4 {
        return Err(gc_combinatorics::GcError::UnsupportedN(n).into());
    }
    let pairs = validate_pairs(n, pairs)?;
    let z = Z { n };
    let mut terms = torus_terms(n);
    for &(i, _) in &pairs {
        let drop = [
            ratio(z.one(i + 2), z.one(i + 1)),
            ratio(z.one(i + 1), z.one(i)),
            ratio(z.two(i + 1), z.two(i)),
            ratio(z.one(i + 1), z.two(i + 1)),
            ratio(z.one(i), z.two(i)),
            ratio(z.two(i), z.two(i - 1)),
        ];
        for d in drop {
            let pos = terms.iter().position(|t| *t == d).ok_or_else(|| PotentialError::MissingTerm(d.to_string()))?;
            terms.remove(pos);
        }
    }
    for &(i, _) in &pairs {
        let u = RationalFunction::var(&format!("u{i}"));
        let v = RationalFunction::var(&format!("v{i}"));
        let wall = &(&u * &v) - &RationalFunction::one();
        terms.push(u.clone());
        terms.push(&u * &ratio(z.one(i), z.two(i + 1)));
        terms.push(&v * &ratio(z.two(i + 1), z.two(i - 1)));
        terms.push(&(&v * &z.one(i + 2)) / &(&wall * &z.one(i)));
    }
    let vars = collect_variables(&terms);
    let chart = if pairs.is_empty() {
        "torus".to_string()
    } else {
        pairs.iter().map(|(i, k)| format!("({i},{k})")).collect::<Vec<_>>().join("")
    };
    Ok(Potential::from_terms(terms, &chart, vars, Model::Gr2n(n)))
}

/// Names of the Gr(2,4) immersed chart against the general immersed chart
/// of `{(1,2)}`.
pub fn gr24_renaming() -> [(&'static str, &'static str); 4] {
    [("u", "u1"), ("v", "v1"), ("z0", "z1,1"), ("w0", "z2,2")]
}

/// The three local chart potentials of Gr(2,4): immersed `L0` and tori `L1`, `L2`.
pub fn gr24_chart_potentials() -> [Potential; 3] {
    let mk = |chart: &str, vars: [&str; 4], terms: &[&str]| {
        Potential::from_terms(
            terms.iter().map(|t| rf(t)).collect(),
            chart,
            vars.iter().map(|s| s.to_string()).collect(),
            Model::Gr2n(4),
        )
    };
    [
        mk("L0", ["u", "v", "z0", "w0"], &["v/((u*v - 1)*z0)", "u", "u*z0/w0", "v*w0"]),
        mk(
            "L1",
            ["x1", "y1", "z1", "w1"],
            &["1/(x1*y1*z1)", "1/(y1*z1)", "y1", "y1*z1/w1", "x1*w1/y1", "w1/y1"],
        ),
        mk(
            "L2",
            ["x2", "y2", "z2", "w2"],
            &["1/(x2*y2*z2)", "y2", "x2*y2", "x2*y2*z2/w2", "y2*z2/w2", "w2/y2"],
        ),
    ]
}
