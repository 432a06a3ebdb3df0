//! The atlases checked by the tool: the two-dimensional local model, Gr(2,4),
//! Gr(2,n) over a family of pair sets, and OG(1,5).

use std::collections::BTreeMap;

use exact_algebra::{rf, var, RationalFunction, Var};
use gc_combinatorics::{index_sets, validate_pairs};
use potentials::{gc_torus_potential, gr24_chart_potentials, immersed_potential, og_bridge, og_bridge_inverse, og_potentials, Model, Potential};

use crate::atlas::{lone, Atlas};
use crate::transition::{local_transitions, Chart, Transition, TransitionError};

const L0_NOTES: &str = "(u, v) in (L0 x L+) or (L+ x L0), uv - 1 invertible";
const L1_NOTES: &str = "x1 in -1 + L+, y1 unitary";
const L2_NOTES: &str = "x2 unitary outside -1 + L+, y2 unitary";

fn find_local(s: &str, t: &str) -> Transition {
    local_transitions().into_iter().find(|x| x.source == s && x.target == t).expect("local map")
}

/// Local transition with extra variables carried along by renaming.
fn extend(t: Transition, same: &[(&str, &str)]) -> Transition {
    let mut t = t;
    for (target, source) in same {
        t.bindings.insert(var(target), RationalFunction::var(source));
    }
    t
}

/// The local model, with the Gr(2,4) chart potentials on the slice where the
/// spectator coordinates `z`, `w` are 1 (every transition fixes them).
pub fn local_atlas() -> Atlas {
    let mut a = Atlas::new(
        "local",
        vec![
            Chart::new("L0", &["u", "v"], L0_NOTES),
            Chart::new("L1", &["x1", "y1"], L1_NOTES),
            Chart::new("L2", &["x2", "y2"], L2_NOTES),
        ],
        local_transitions(),
    );
    for (k, p) in gr24_chart_potentials().into_iter().enumerate() {
        let slice: BTreeMap<Var, RationalFunction> =
            named(k as u32).iter().map(|(z, _)| (var(z), RationalFunction::one())).collect();
        let terms = p.terms.iter().map(|t| t.substitute(&slice).expect("no poles on the slice")).collect();
        let vars = p.variables[..2].to_vec();
        a.potentials.insert(p.chart.clone(), Potential::from_terms(terms, &p.chart, vars, Model::Gr2n(4)));
    }
    a
}

fn named(k: u32) -> [(&'static str, &'static str); 2] {
    match k {
        0 => [("z0", "z0"), ("w0", "w0")],
        1 => [("z1", "z1"), ("w1", "w1")],
        _ => [("z2", "z2"), ("w2", "w2")],
    }
}

fn slot_index(name: &str) -> u32 {
    name[1..].parse().unwrap()
}

pub fn gr24_atlas() -> Atlas {
    let transitions = local_transitions()
        .into_iter()
        .map(|t| {
            let (s, d) = (named(slot_index(&t.source)), named(slot_index(&t.target)));
            extend(t, &[(d[0].0, s[0].0), (d[1].0, s[1].0)])
        })
        .collect();
    let mut a = Atlas::new(
        "Gr(2,4)",
        vec![
            Chart::new("L0", &["u", "v", "z0", "w0"], L0_NOTES),
            Chart::new("L1", &["x1", "y1", "z1", "w1"], L1_NOTES),
            Chart::new("L2", &["x2", "y2", "z2", "w2"], L2_NOTES),
        ],
        transitions,
    );
    for p in gr24_chart_potentials() {
        a.potentials.insert(p.chart.clone(), p);
    }
    a
}

pub fn og15_atlas() -> Atlas {
    let zname = |k: u32| format!("z{k}");
    let mut transitions: Vec<Transition> = local_transitions()
        .into_iter()
        .map(|t| {
            let (s, d) = (zname(slot_index(&t.source)), zname(slot_index(&t.target)));
            extend(t, &[(&d, &s)])
        })
        .collect();
    transitions.push(Transition { source: "L2'".into(), target: "L2".into(), bindings: og_bridge(), constraints: vec![] });
    transitions.push(Transition {
        source: "L2".into(),
        target: "L2'".into(),
        bindings: og_bridge_inverse(),
        constraints: vec![],
    });
    let mut a = Atlas::new(
        "OG(1,5)",
        vec![
            Chart::new("L0", &["u", "v", "z0"], L0_NOTES),
            Chart::new("L1", &["x1", "y1", "z1"], L1_NOTES),
            Chart::new("L2", &["x2", "y2", "z2"], L2_NOTES),
            Chart::new("L2'", &["y1,1", "y1,2", "y1,3"], "unitary"),
        ],
        transitions,
    );
    let og = og_potentials();
    for p in [og.l0, og.l1, og.l2, og.torus_prime] {
        a.potentials.insert(p.chart.clone(), p);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    L0,
    L1,
    L2,
    Torus,
}

fn pairs_label(pairs: &[(u32, u32)]) -> String {
    pairs.iter().map(|(i, k)| format!("({i},{k})")).collect()
}

pub fn chart_name(slot: Slot, pairs: &[(u32, u32)]) -> String {
    match slot {
        Slot::Torus => "T".into(),
        Slot::L0 => format!("L0{}", pairs_label(pairs)),
        Slot::L1 => format!("L1{}", pairs_label(pairs)),
        Slot::L2 => format!("L2{}", pairs_label(pairs)),
    }
}

fn survivors(n: u32, pairs: &[(u32, u32)]) -> Vec<String> {
    let mut out = Vec::new();
    for j in 1..=n - 2 {
        if !pairs.iter().any(|&(i, _)| i + 1 == j) {
            out.push(format!("z1,{j}"));
        }
    }
    for j in 1..=n - 2 {
        if !pairs.iter().any(|&(i, _)| i == j) {
            out.push(format!("z2,{j}"));
        }
    }
    out
}

fn torus_vars(n: u32) -> Vec<String> {
    survivors(n, &[])
}

/// Per-pair names of the local coordinates.
fn local_names(slot: Slot, i: u32) -> Vec<(String, String)> {
    match slot {
        Slot::L0 => vec![("u".into(), format!("u{i}")), ("v".into(), format!("v{i}"))],
        Slot::L1 => vec![("x1".into(), format!("x{i},1")), ("y1".into(), format!("y{i},1"))],
        Slot::L2 => vec![("x2".into(), format!("x{i},2")), ("y2".into(), format!("y{i},2"))],
        Slot::Torus => vec![],
    }
}

pub fn chart_variables(n: u32, pairs: &[(u32, u32)], slot: Slot) -> Vec<String> {
    if slot == Slot::Torus {
        return torus_vars(n);
    }
    let mut out: Vec<String> = pairs.iter().flat_map(|&(i, _)| local_names(slot, i).into_iter().map(|x| x.1)).collect();
    out.extend(survivors(n, pairs));
    out
}

fn local_slot_name(s: Slot) -> &'static str {
    match s {
        Slot::L0 => "L0",
        Slot::L1 => "L1",
        Slot::L2 => "L2",
        Slot::Torus => "T",
    }
}

/// Transition between two charts of the product model of `pairs`: the
/// wall-crossing map on every pair slot, identity on the surviving torus
/// coordinates.
pub fn product_transition(n: u32, pairs: &[(u32, u32)], source: Slot, target: Slot) -> Result<Transition, TransitionError> {
    let pairs = validate_pairs(n, pairs)?;
    let src_name = chart_name(source, &pairs);
    let dst_name = chart_name(target, &pairs);
    let mut bindings: BTreeMap<Var, RationalFunction> = BTreeMap::new();
    let mut constraints = Vec::new();
    let invalid = || TransitionError::Missing(format!("{source:?}"), format!("{target:?}"));
    let keep: Vec<String> = if target == Slot::Torus { survivors(n, &pairs) } else { chart_variables(n, &pairs, target) };
    for v in keep.iter().filter(|v| v.starts_with('z')) {
        bindings.insert(var(v), RationalFunction::var(v));
    }
    for &(i, _) in &pairs {
        let z1 = |j: u32| format!("z1,{j}");
        let z2 = |j: u32| format!("z2,{j}");
        match (source, target) {
            (Slot::Torus, Slot::L2) => {
                let (x, y) = (format!("x{i},2"), format!("y{i},2"));
                bindings.insert(var(&x), rf(&format!("{}*{}/({}*{})", z1(i + 1), z2(i), z1(i), z2(i + 1))));
                bindings.insert(var(&y), rf(&format!("{}/{}", z2(i + 1), z2(i))));
            }
            (Slot::L2, Slot::Torus) => {
                let (x, y) = (format!("x{i},2"), format!("y{i},2"));
                bindings.insert(var(&z2(i)), rf(&format!("{}/{y}", z2(i + 1))));
                bindings.insert(var(&z1(i + 1)), rf(&format!("{x}*{}*{y}", z1(i))));
                constraints.push(rf(&y));
            }
            (Slot::Torus, _) | (_, Slot::Torus) => return Err(invalid()),
            (s, t) if s == t => {
                for (_, v) in local_names(s, i) {
                    bindings.insert(var(&v), RationalFunction::var(&v));
                }
            }
            (s, t) => {
                let local = find_local(local_slot_name(s), local_slot_name(t));
                let rename: BTreeMap<Var, RationalFunction> = local_names(s, i)
                    .into_iter()
                    .map(|(a, b)| (var(&a), RationalFunction::var(&b)))
                    .collect();
                let target_names: BTreeMap<String, String> = local_names(t, i).into_iter().collect();
                for (k, e) in &local.bindings {
                    bindings.insert(var(&target_names[&**k]), e.substitute(&rename)?);
                }
                for c in &local.constraints {
                    constraints.push(c.substitute(&rename)?);
                }
            }
        }
    }
    Ok(Transition { source: src_name, target: dst_name, bindings, constraints })
}

/// Gr(2,n) atlas over the given pair sets (the maximal ones by default):
/// three charts per pair set, all glued to the shared torus chart through
/// their `L2` chart.
pub fn gr2n_atlas(n: u32, pair_sets: Option<Vec<Vec<(u32, u32)>>>) -> Result<Atlas, TransitionError> {
    let sets = match pair_sets {
        Some(s) => s,
        None => index_sets(n).1,
    };
    let torus = gc_torus_potential(n)?;
    let mut atlas = Atlas::new(&format!("Gr(2,{n})"), vec![Chart::new("T", &[], "unitary")], Vec::new());
    atlas.charts[0].variables = torus_vars(n);
    atlas.potentials.insert("T".into(), torus.clone());
    let slots = [Slot::L0, Slot::L1, Slot::L2];
    for set in sets {
        let set = validate_pairs(n, &set)?;
        if set.is_empty() {
            continue;
        }
        for s in slots {
            let notes = match s {
                Slot::L0 => L0_NOTES,
                Slot::L1 => L1_NOTES,
                _ => L2_NOTES,
            };
            let mut c = Chart::new(&chart_name(s, &set), &[], notes);
            c.variables = chart_variables(n, &set, s);
            atlas.charts.push(c);
        }
        for s in slots {
            for t in slots {
                if s != t {
                    atlas.transitions.push(product_transition(n, &set, s, t)?);
                }
            }
        }
        let to_l2 = product_transition(n, &set, Slot::Torus, Slot::L2)?;
        let from_l2 = product_transition(n, &set, Slot::L2, Slot::Torus)?;
        // Tori potentials come from the torus chart; the immersed one is independent.
        let w2 = from_l2.pull_back(&torus.expr)?;
        let l1_to_l2 = product_transition(n, &set, Slot::L1, Slot::L2)?;
        let w1 = l1_to_l2.pull_back(&w2)?;
        let w0 = immersed_potential(n, &set)?;
        let model = Model::Gr2n(n);
        let name = |s| chart_name(s, &set);
        atlas.potentials.insert(name(Slot::L2), lone(w2, &name(Slot::L2), &chart_variables(n, &set, Slot::L2), model));
        atlas.potentials.insert(name(Slot::L1), lone(w1, &name(Slot::L1), &chart_variables(n, &set, Slot::L1), model));
        atlas.potentials.insert(name(Slot::L0), w0);
        atlas.transitions.push(to_l2);
        atlas.transitions.push(from_l2);
    }
    Ok(atlas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_to_l2_for_gr24() {
        let t = product_transition(4, &[(1, 2)], Slot::Torus, Slot::L2).unwrap();
        assert_eq!(t.bindings[&var("x1,2")], rf("z1,2*z2,1/(z1,1*z2,2)"));
        assert_eq!(t.bindings[&var("y1,2")], rf("z2,2/z2,1"));
        assert_eq!(t.target, "L2(1,2)");
    }

    #[test]
    fn two_blocks_share_torus_variables() {
        let t = product_transition(6, &[(1, 2), (3, 4)], Slot::L0, Slot::L1).unwrap();
        assert_eq!(t.bindings[&var("x1,1")], rf("u1*v1 - 1"));
        assert_eq!(t.bindings[&var("y3,1")], rf("u3"));
        assert_eq!(t.bindings[&var("z1,1")], rf("z1,1"));
        assert_eq!(t.bindings.len(), 4 + 4);
    }

    #[test]
    fn empty_pair_set_is_identity() {
        let t = product_transition(5, &[], Slot::L0, Slot::L2).unwrap();
        assert!(t.bindings.iter().all(|(k, v)| *v == RationalFunction::var(k)));
        assert_eq!(t.bindings.len(), 6);
    }

    #[test]
    fn invalid_slot_pairs() {
        assert!(product_transition(4, &[(1, 2)], Slot::Torus, Slot::L0).is_err());
        assert!(product_transition(4, &[(2, 3)], Slot::L0, Slot::L1).is_err());
    }
}
