//! Dictionaries from chart coordinates to ratios of Plucker coordinates.

use std::collections::BTreeMap;

use exact_algebra::{var, RationalFunction, Var};
use gc_combinatorics::{validate_pairs, PairSet};

use crate::coords::p;
use crate::error::PluckerError;

#[derive(Clone, Debug)]
pub struct ChartBindings {
    pub n: u32,
    pub pairs: PairSet,
    /// Chart variable to Plucker ratio.
    pub bindings: BTreeMap<Var, RationalFunction>,
    /// The immersed potential becomes this power of `T` times a `T`-free
    /// Laurent expression after `x -> T^{t_powers[x]} x`, see
    /// [`ChartBindings::overall_t`].
    pub t_powers: BTreeMap<Var, i32>,
    /// `q = T^{q_power}`.
    pub q_power: u32,
}

impl ChartBindings {
    /// Power of `T` pulled out of the rescaled potential.
    pub fn overall_t(&self) -> i32 {
        1
    }
}

pub fn z1(j: u32) -> String {
    format!("z1,{j}")
}

pub fn z2(j: u32) -> String {
    format!("z2,{j}")
}

pub fn u(i: u32) -> String {
    format!("u{i}")
}

pub fn v(i: u32) -> String {
    format!("v{i}")
}

/// Torus variables that survive in the chart of `pairs`: each pair `(i, i+1)`
/// absorbs `z_{1,i+1}` and `z_{2,i}`.
pub fn surviving_torus_variables(n: u32, pairs: &[(u32, u32)]) -> Vec<String> {
    let mut out = Vec::new();
    for j in 1..=n - 2 {
        if !pairs.iter().any(|&(i, _)| i + 1 == j) {
            out.push(z1(j));
        }
    }
    for j in 1..=n - 2 {
        if !pairs.iter().any(|&(i, _)| i == j) {
            out.push(z2(j));
        }
    }
    out
}

/// Image of `u_i v_i - 1` forced by the bindings of `u_i` and `v_i`.
pub fn wall_factor_image(n: u32, i: u32) -> RationalFunction {
    &(&p(n - i - 2, n - i - 1) * &p(n - i, n)) / &(&p(n - i - 2, n) * &p(n - i - 1, n - i))
}

pub fn geometric_to_plucker(n: u32, pairs: &[(u32, u32)]) -> Result<ChartBindings, PluckerError> {
    let pairs = validate_pairs(n, pairs)?;
    let mut bindings = BTreeMap::new();
    let mut t_powers = BTreeMap::new();
    for name in surviving_torus_variables(n, &pairs) {
        let (kind, j) = name[1..].split_once(',').map(|(a, b)| (a == "1", b.parse::<u32>().unwrap())).unwrap();
        let (img, t) = if kind {
            (&p(n - j - 1, n - j) / &p(n - j, n), -(1 + j as i32))
        } else {
            (&p(n - j - 1, n) / &p(n - 1, n), -(j as i32))
        };
        bindings.insert(var(&name), img);
        t_powers.insert(var(&name), t);
    }
    for &(i, _) in &pairs {
        bindings.insert(var(&u(i)), &p(n - i - 2, n - i) / &p(n - i - 1, n - i));
        bindings.insert(var(&v(i)), &p(n - i - 1, n) / &p(n - i - 2, n));
        t_powers.insert(var(&u(i)), -1);
        t_powers.insert(var(&v(i)), 1);
    }
    Ok(ChartBindings { n, pairs, bindings, t_powers, q_power: n })
}

/// Inverse of [`geometric_to_plucker`] on the slice `p_{n-1,n} = 1`: every
/// `p_{i,j}` as a Laurent polynomial in the chart coordinates.
///
/// Goes through the columns `p_{k,n}` and `p_{k,n-1}`, then
/// `p_{i,j} = p_{i,n-1} p_{j,n} - p_{i,n} p_{j,n-1}`. The only divisions are
/// by coordinates that are units on the chart, so points with `u_i = 0` or
/// `v_i = 0` are still covered.
pub fn plucker_from_chart(n: u32, pairs: &[(u32, u32)]) -> Result<BTreeMap<(u32, u32), RationalFunction>, PluckerError> {
    let pairs = validate_pairs(n, pairs)?;
    let x = |name: String| RationalFunction::var(&name);
    // Pair (i, i+1) sits on the block a = n-i-2, a+1, a+2.
    let block = |k: u32| pairs.iter().find(|&&(i, _)| n - i - 2 == k).map(|&(i, _)| i);
    let upper = |k: u32| pairs.iter().find(|&&(i, _)| n - i - 1 == k).map(|&(i, _)| i);

    // p_{k,n}, top down so that v_i can use p_{a,n}.
    let mut col_n: BTreeMap<u32, RationalFunction> = BTreeMap::new();
    col_n.insert(n - 1, RationalFunction::one());
    col_n.insert(n, RationalFunction::zero());
    for k in 1..=n - 2 {
        if upper(k).is_none() {
            col_n.insert(k, x(z2(n - k - 1)));
        }
    }
    for &(i, _) in &pairs {
        let a = n - i - 2;
        col_n.insert(a + 1, &x(v(i)) * &col_n[&a]);
    }

    // p_{k,k+1} outside the blocks' first edge, and p_{a,a+2} on them.
    let edge = |k: u32| &x(z1(n - k - 1)) * &col_n[&(k + 1)];

    let mut col_m: BTreeMap<u32, RationalFunction> = BTreeMap::new();
    col_m.insert(n - 1, RationalFunction::zero());
    col_m.insert(n, -RationalFunction::one());
    for k in (1..=n - 2).rev() {
        let val = match block(k) {
            Some(i) => {
                let skip = &x(u(i)) * &edge(k + 1);
                &(&skip + &(&col_n[&k] * &col_m[&(k + 2)])) / &col_n[&(k + 2)]
            }
            None => &(&edge(k) + &(&col_n[&k] * &col_m[&(k + 1)])) / &col_n[&(k + 1)],
        };
        col_m.insert(k, val);
    }

    let mut out = BTreeMap::new();
    for i in 1..n {
        for j in i + 1..=n {
            let e = &(&col_m[&i] * &col_n[&j]) - &(&col_n[&i] * &col_m[&j]);
            out.insert((i, j), e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use exact_algebra::rf;

    use super::*;
    use crate::coords::{equal_mod_plucker, PluckerExpression};

    #[test]
    fn gr24_dictionary() {
        let b = geometric_to_plucker(4, &[(1, 2)]).unwrap();
        assert_eq!(b.bindings[&var("u1")], rf("p1,3/p2,3"));
        assert_eq!(b.bindings[&var("v1")], rf("p2,4/p1,4"));
        assert_eq!(b.bindings[&var("z1,1")], rf("p2,3/p3,4"));
        assert_eq!(b.bindings[&var("z2,2")], rf("p1,4/p3,4"));
        assert_eq!(b.bindings.len(), 4);
        let t: Vec<i32> = ["u1", "v1", "z1,1", "z2,2"].iter().map(|k| b.t_powers[&var(k)]).collect();
        assert_eq!(t, vec![-1, 1, -2, -2]);
        assert_eq!(b.q_power, 4);
    }

    #[test]
    fn torus_dictionary_n4() {
        let b = geometric_to_plucker(4, &[]).unwrap();
        assert_eq!(b.bindings[&var("z1,1")], rf("p2,3/p3,4"));
        assert_eq!(b.bindings[&var("z1,2")], rf("p1,2/p2,4"));
        assert_eq!(b.bindings[&var("z2,1")], rf("p2,4/p3,4"));
        assert_eq!(b.bindings[&var("z2,2")], rf("p1,4/p3,4"));
    }

    #[test]
    fn wall_factor_matches_bindings() {
        for n in 4..=8 {
            let (all, _) = gc_combinatorics::index_sets(n);
            for s in all {
                let b = geometric_to_plucker(n, &s).unwrap();
                for &(i, _) in &s {
                    let uv = &(&b.bindings[&var(&u(i))] * &b.bindings[&var(&v(i))]) - &RationalFunction::one();
                    let lhs = PluckerExpression::new(uv, n).unwrap();
                    let rhs = PluckerExpression::new(wall_factor_image(n, i), n).unwrap();
                    assert!(equal_mod_plucker(&lhs, &rhs).unwrap());
                }
            }
        }
    }

    #[test]
    fn invalid_pairs() {
        assert!(geometric_to_plucker(5, &[(1, 2), (2, 3)]).is_err());
        assert!(geometric_to_plucker(4, &[(2, 3)]).is_err());
    }

    #[test]
    fn chart_inverse() {
        for n in 4..=7 {
            let (all, _) = gc_combinatorics::index_sets(n);
            for s in all {
                let inv = plucker_from_chart(n, &s).unwrap();
                let pmap: BTreeMap<Var, RationalFunction> =
                    inv.iter().map(|((i, j), e)| (var(&crate::coords::p_name(*i, *j)), e.clone())).collect();
                assert!(inv.values().all(|e| e.as_laurent().is_some()), "n = {n}, {s:?}");
                assert!(inv[&(n - 1, n)].is_one());
                let b = geometric_to_plucker(n, &s).unwrap();
                for (k, img) in &b.bindings {
                    assert_eq!(img.substitute(&pmap).unwrap(), RationalFunction::var(k), "n = {n}, {s:?}");
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        for k in j + 1..=n {
                            for l in k + 1..=n {
                                let r = crate::coords::plucker_relation(i, j, k, l, n).unwrap();
                                let r = RationalFunction::from_poly(r).substitute(&pmap).unwrap();
                                assert!(r.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }
}
