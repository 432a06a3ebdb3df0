use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use atlas_gluing::{gr24_atlas, gr2n_atlas, local_atlas, og15_atlas, Atlas};
use critical_solver::{
    known::{KNOWN_RESIDUAL_TOL, VALUE_TOL},
    known_points, known_values, match_table, multiset_match, solve_model, t_from_q, verify_known, SolveConfig,
};
use exact_algebra::{novikov_expand, parse, var, Coeff, LaurentPoly, Monomial, RationalFunction, Var};
use gc_combinatorics::{
    chart_subdivision, index_sets,
    polytope::{face_of_diagram, faces, in_relative_interior, point_from_map},
    Block, Ladder,
};
use koszul_mf::{center_decompose, koszul_report, QuadraticExtension};
use num_complex::Complex64;
use plucker::{covering_certificate, covering_check, equal_mod_plucker};
use potentials::{
    gr24_chart_potentials, immersed_potential, og_potentials, rietsch_cluster, rietsch_gr, rietsch_restrict,
    verify_rietsch_identity, Model,
};
use serde_json::json;

use crate::args::{
    AtlasArgs, Command, CoveringArgs, CriticalArgs, ExpandArgs, FacesArgs, ModelArgs, ModelKind, VerifyCommand,
};
use crate::RunReport;

type Outcome = Result<(), String>;

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Faces(_) => "faces",
        Command::Charts(_) => "charts",
        Command::Potential(_) => "potential",
        Command::Rietsch(_) => "rietsch",
        Command::Verify(VerifyCommand::Rietsch(_)) => "verify rietsch",
        Command::Verify(VerifyCommand::Cocycle(_)) => "verify cocycle",
        Command::Verify(VerifyCommand::Transport(_)) => "verify transport",
        Command::Verify(VerifyCommand::Koszul(_)) => "verify koszul",
        Command::Verify(VerifyCommand::Covering(_)) => "verify covering",
        Command::Critical(_) => "critical",
        Command::Expand(_) => "expand",
    }
}

pub(crate) fn dispatch(cmd: &Command) -> RunReport {
    let mut r = RunReport::new(command_name(cmd));
    let outcome = match cmd {
        Command::Faces(a) => faces_cmd(&mut r, a),
        Command::Charts(a) => charts_cmd(&mut r, a),
        Command::Potential(a) => potential_cmd(&mut r, a),
        Command::Rietsch(a) => rietsch_cmd(&mut r, a),
        Command::Verify(VerifyCommand::Rietsch(a)) => verify_rietsch(&mut r, a),
        Command::Verify(VerifyCommand::Cocycle(a)) => verify_cocycle(&mut r, a),
        Command::Verify(VerifyCommand::Transport(a)) => verify_transport(&mut r, a),
        Command::Verify(VerifyCommand::Koszul(a)) => verify_koszul(&mut r, a),
        Command::Verify(VerifyCommand::Covering(a)) => verify_covering(&mut r, a),
        Command::Critical(a) => critical_cmd(&mut r, a),
        Command::Expand(a) => expand_cmd(&mut r, a),
    };
    if let Err(e) = outcome {
        r.verdict("error", false, e);
    }
    r
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `"1,2;3,4"` to `[(1,2), (3,4)]`; blank means the empty set.
pub(crate) fn parse_pairs(s: &str) -> Result<Vec<(u32, u32)>, String> {
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let nums: Vec<u32> = part
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| format!("bad pair `{part}`")))
            .collect::<Result<_, _>>()?;
        match nums.as_slice() {
            [i, j] => out.push((*i, *j)),
            _ => return Err(format!("bad pair `{part}`")),
        }
    }
    Ok(out)
}

fn pairs_label(pairs: &[(u32, u32)]) -> String {
    if pairs.is_empty() {
        "{}".into()
    } else {
        let s: Vec<String> = pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        format!("{{{}}}", s.join(","))
    }
}

fn model_of(kind: ModelKind, n: u32) -> Result<Model, String> {
    match kind {
        ModelKind::Gr => Ok(Model::Gr2n(n)),
        ModelKind::Og15 => Ok(Model::Og15),
        ModelKind::Og14 => Ok(Model::Og14),
        ModelKind::Local => Err("the local model only has an atlas".into()),
    }
}

fn model_inputs(r: &mut RunReport, a: &ModelArgs) -> Result<Vec<(u32, u32)>, String> {
    r.input("model", format!("{:?}", a.model).to_lowercase());
    r.input("n", a.n);
    let pairs = parse_pairs(a.pairs.as_deref().unwrap_or(""))?;
    if let Some(p) = &a.pairs {
        r.input("pairs", p);
    }
    Ok(pairs)
}

fn faces_cmd(r: &mut RunReport, a: &FacesArgs) -> Outcome {
    let n = a.n;
    r.input("n", n);
    let ladder = Ladder::new(n).map_err(err)?;
    let diagrams = r.timed("diagrams", || ladder.admissible_diagrams());
    let lagrangian: Vec<u64> = diagrams.iter().copied().filter(|d| ladder.classify(*d).lagrangian).collect();
    let (sets, _) = index_sets(n);
    let from_pairs: BTreeSet<u64> =
        sets.iter().map(|s| ladder.lagrangian_diagram(s)).collect::<Result<_, _>>().map_err(err)?;
    let found: BTreeSet<u64> = lagrangian.iter().copied().collect();
    r.line(format!("Gr(2,{n}): {} admissible diagrams, {} Lagrangian faces", diagrams.len(), lagrangian.len()));
    r.verdict(
        "lagrangian count",
        lagrangian.len() == sets.len() && found == from_pairs,
        format!("{} faces, {} pair sets", lagrangian.len(), sets.len()),
    );

    let mut rows = Vec::new();
    let mut rule_ok = true;
    let mut interior_ok = true;
    let mut count_ok = true;
    for s in &sets {
        let mask = ladder.lagrangian_diagram(s).map_err(err)?;
        let class = ladder.classify(mask);
        let u = ladder.monotone_point(mask).map_err(err)?;
        // The rule, restated from the block decomposition.
        let mut want = BTreeMap::new();
        for b in &class.blocks {
            match *b {
                Block::U1 { col, row } => {
                    want.insert((col, row), row as i64 - col as i64);
                }
                Block::U2 { row } => {
                    for cell in [(1, row), (2, row), (1, row + 1), (2, row + 1)] {
                        want.insert(cell, row as i64 - 1);
                    }
                }
            }
        }
        let rule = u == want && u.len() == 2 * (n as usize - 2);
        let interior = in_relative_interior(&ladder, mask, &point_from_map(n, &u));
        let counted = class.n1 + 4 * class.n2 == 2 * (n - 2);
        rule_ok &= rule;
        interior_ok &= interior;
        count_ok &= counted;
        let point: Vec<String> = u.iter().map(|((i, j), v)| format!("u{i},{j}={v}")).collect();
        r.line(format!("  {:<16} {:<14} dim {}  {}", pairs_label(s), class.diffeo_type, class.dimension, point.join(" ")));
        rows.push(json!({
            "pairs": s,
            "diffeo_type": class.diffeo_type,
            "dimension": class.dimension,
            "n1": class.n1,
            "n2": class.n2,
            "monotone_point": u.iter().map(|((i, j), v)| (format!("u{i},{j}"), *v)).collect::<BTreeMap<_, _>>(),
        }));
    }
    r.verdict("monotone rule", rule_ok, "u = row - col on U(1) boxes, row - 1 on U(2) blocks");
    r.verdict("relative interior", interior_ok, "each monotone point is interior to its face");
    r.verdict("block count", count_ok, format!("n1 + 4 n2 = {}", 2 * (n - 2)));

    let mut oracle = serde_json::Value::Null;
    if n <= 5 {
        let (verts, polys) = r.timed("oracle", || faces(n));
        let mut dd: Vec<usize> = diagrams.iter().map(|d| ladder.dimension(*d) as usize).collect();
        let mut fd: Vec<usize> = polys.iter().map(|f| f.dimension).collect();
        dd.sort();
        fd.sort();
        let images: BTreeSet<_> = diagrams.iter().map(|d| face_of_diagram(&ladder, *d, &verts)).collect();
        let all: BTreeSet<_> = polys.into_iter().collect();
        let ok = diagrams.len() == all.len() && dd == fd && images == all;
        r.verdict("oracle", ok, format!("{} diagrams, {} polytope faces", diagrams.len(), all.len()));
        oracle = json!({ "diagrams": diagrams.len(), "faces": all.len(), "dimensions": fd });
    }
    r.data = json!({ "n": n, "admissible": diagrams.len(), "lagrangian": rows, "oracle": oracle });
    Ok(())
}

fn charts_cmd(r: &mut RunReport, a: &ModelArgs) -> Outcome {
    model_inputs(r, a)?;
    let atlas = atlas_for(a.model, a.n)?;
    let names: Vec<String> = atlas.charts.iter().map(|c| format!("{}[{}]", c.name, c.variables.join(","))).collect();
    r.line(format!("{}: {} charts, {} transitions", atlas.name, atlas.charts.len(), atlas.transitions.len()));
    for c in &names {
        r.line(format!("  {c}"));
    }
    r.verdict("connected", atlas.is_connected(), format!("{} charts", atlas.charts.len()));
    let mut subdivisions = Vec::new();
    if a.model == ModelKind::Gr {
        let n = a.n;
        let (all, maximal) = index_sets(n);
        let mut ok = true;
        for s in &all {
            let sub = chart_subdivision(n, s).map_err(err)?;
            let good = sub.quadrilaterals() == s.len() && sub.triangles() == n as usize - 2 - 2 * s.len();
            ok &= good;
            r.line(format!(
                "  {:<16} {} quadrilaterals, {} triangles{}",
                pairs_label(s),
                sub.quadrilaterals(),
                sub.triangles(),
                if maximal.contains(s) { ", maximal" } else { "" }
            ));
            subdivisions.push(json!({ "pairs": s, "maximal": maximal.contains(s), "subdivision": sub }));
        }
        r.verdict("subdivisions", ok, format!("{} pair sets, {} maximal", all.len(), maximal.len()));
    }
    r.data = json!({ "atlas": atlas.to_json(), "subdivisions": subdivisions });
    Ok(())
}

fn potential_cmd(r: &mut RunReport, a: &ModelArgs) -> Outcome {
    let pairs = model_inputs(r, a)?;
    match model_of(a.model, a.n)? {
        Model::Gr2n(n) => {
            let w = immersed_potential(n, &pairs).map_err(err)?;
            r.line(format!("W_{} = {}", pairs_label(&pairs), w.display_terms()));
            let want = 3 * n as usize - 6 - 2 * pairs.len();
            r.verdict("term count", w.terms.len() == want, format!("{} terms, expected {want}", w.terms.len()));
            r.data = json!(w.to_json());
        }
        Model::Og15 | Model::Og14 => {
            let og = og_potentials();
            let list = if a.model == ModelKind::Og14 {
                vec![og.og14]
            } else {
                vec![og.l0, og.l1, og.l2, og.torus_prime]
            };
            for p in &list {
                r.line(format!("W_{} = {}", p.chart, p.display_terms()));
            }
            r.verdict("potentials", list.iter().all(|p| !p.terms.is_empty()), format!("{} charts", list.len()));
            r.data = json!(list.iter().map(|p| p.to_json()).collect::<Vec<_>>());
        }
    }
    Ok(())
}

fn rietsch_cmd(r: &mut RunReport, a: &ModelArgs) -> Outcome {
    let pairs = model_inputs(r, a)?;
    match model_of(a.model, a.n)? {
        Model::Gr2n(n) => {
            let w = rietsch_gr(n).map_err(err)?;
            let c = rietsch_cluster(n).map_err(err)?;
            r.line(format!("W_Rie = {}", w.expr));
            r.line(format!("cluster form = {}", c.expr));
            let same = equal_mod_plucker(&c, &w).map_err(err)?;
            r.verdict("cluster form", same, "equal modulo the Plucker relations");
            let mut restricted = serde_json::Value::Null;
            if a.pairs.is_some() {
                let e = rietsch_restrict(n, &pairs).map_err(err)?;
                r.line(format!("on {} = {}", pairs_label(&pairs), e.expr));
                r.verdict("restriction", true, "no forbidden denominators remain");
                restricted = json!(e.expr.to_string());
            }
            r.data = json!({ "rietsch": w.expr.to_string(), "cluster": c.expr.to_string(), "restricted": restricted });
        }
        Model::Og15 => {
            let og = og_potentials();
            r.line(format!("W_Rie = {}", og.rietsch.expr));
            r.verdict("rietsch", !og.rietsch.terms.is_empty(), format!("{} terms", og.rietsch.terms.len()));
            r.data = json!(og.rietsch.to_json());
        }
        m @ Model::Og14 => return Err(format!("no Rietsch potential for {m}")),
    }
    Ok(())
}

fn verify_rietsch(r: &mut RunReport, a: &ModelArgs) -> Outcome {
    let pairs = model_inputs(r, a)?;
    let model = model_of(a.model, a.n)?;
    let sets = match model {
        Model::Gr2n(n) if a.pairs.is_none() => index_sets(n).1,
        _ => vec![pairs],
    };
    let mut reports = Vec::new();
    for s in &sets {
        let rep = r.timed(&format!("identity {}", pairs_label(s)), || verify_rietsch_identity(model, s)).map_err(err)?;
        let label = match model {
            Model::Gr2n(n) => {
                r.line(format!("W_{} = {}", pairs_label(&rep.pairs), immersed_potential(n, s).map_err(err)?.display_terms()));
                format!("identity {}", pairs_label(&rep.pairs))
            }
            _ => {
                r.line(format!("W_L0 = {}", rep.chart_potential));
                "identity L0".to_string()
            }
        };
        r.verdict(
            &label,
            rep.holds,
            format!("{model}: chart potential equals W_Rie under the Plucker bindings"),
        );
        reports.push(rep);
    }
    r.data = json!(reports);
    Ok(())
}

fn atlas_for(kind: ModelKind, n: u32) -> Result<Atlas, String> {
    match kind {
        ModelKind::Local => Ok(local_atlas()),
        ModelKind::Gr if n == 4 => Ok(gr24_atlas()),
        ModelKind::Gr => gr2n_atlas(n, None).map_err(err),
        ModelKind::Og15 => Ok(og15_atlas()),
        ModelKind::Og14 => Err("no atlas for OG(1,4)".into()),
    }
}

fn atlas_inputs(r: &mut RunReport, a: &AtlasArgs) -> Result<Atlas, String> {
    r.input("model", format!("{:?}", a.model).to_lowercase());
    r.input("n", a.n);
    r.input("fault", a.fault);
    atlas_for(a.model, a.n)
}

/// Double the first binding of the first transition.
fn cocycle_fault(atlas: &Atlas) -> Result<Atlas, String> {
    let t = atlas.transitions.first().ok_or("atlas has no transitions")?;
    let (v, e) = t.bindings.iter().next().ok_or("transition has no bindings")?;
    atlas.with_binding(&t.source, &t.target, v, &RationalFunction::from_int(2) * e).map_err(err)
}

/// Add the first variable of the first chart to that chart's potential.
fn transport_fault(atlas: &Atlas) -> Result<Atlas, String> {
    let (name, w) = atlas.potentials.iter().find(|(_, w)| !w.variables.is_empty()).ok_or("atlas has no potentials")?;
    Ok(atlas.with_potential(name, &w.expr + &RationalFunction::var(&w.variables[0])))
}

fn verify_cocycle(r: &mut RunReport, a: &AtlasArgs) -> Outcome {
    let mut atlas = atlas_inputs(r, a)?;
    if a.fault {
        atlas = cocycle_fault(&atlas)?;
    }
    let rep = r.timed("cocycle", || atlas.verify_cocycle());
    for f in &rep.failures {
        r.line(format!("  {}: {}", f.path.join(" -> "), f.detail));
    }
    let detail = format!("{} triangles, {} round trips, {} failures", rep.triangles, rep.round_trips, rep.failures.len());
    if a.fault {
        r.verdict("fault detected", !rep.passed(), detail);
    } else {
        r.verdict("cocycle", rep.passed(), detail);
    }
    r.data = json!({ "atlas": atlas.name, "report": rep });
    Ok(())
}

fn verify_transport(r: &mut RunReport, a: &AtlasArgs) -> Outcome {
    let mut atlas = atlas_inputs(r, a)?;
    if a.fault {
        atlas = transport_fault(&atlas)?;
    }
    let rep = r.timed("transport", || atlas.verify_potential_transport());
    for f in &rep.failures {
        r.line(format!("  {}: {}", f.path.join(" -> "), f.detail));
    }
    let detail = format!("{} edges, {} failures", rep.edges.len(), rep.failures.len());
    if a.fault {
        r.verdict("fault detected", !rep.passed(), detail);
    } else {
        r.verdict("transport", rep.passed(), detail);
    }
    r.data = json!({ "atlas": atlas.name, "report": rep });
    Ok(())
}

fn center(pairs: &[(&str, &str)]) -> Result<BTreeMap<String, RationalFunction>, String> {
    pairs.iter().map(|(k, v)| Ok((k.to_string(), parse(v).map_err(err)?))).collect()
}

fn verify_koszul(r: &mut RunReport, a: &AtlasArgs) -> Outcome {
    r.input("model", format!("{:?}", a.model).to_lowercase());
    r.input("fault", a.fault);
    let cases = match a.model {
        ModelKind::Og15 => vec![(og_potentials().l0, center(&[("u", "0"), ("v", "0"), ("z0", "-1")])?, None)],
        ModelKind::Gr if a.n == 4 => {
            let [l0, _, _] = gr24_chart_potentials();
            let i = QuadraticExtension::sqrt_minus_one("s");
            vec![
                (l0.clone(), center(&[("u", "0"), ("v", "0"), ("z0", "-s"), ("w0", "s")])?, Some(i.clone())),
                (l0, center(&[("u", "0"), ("v", "0"), ("z0", "-1"), ("w0", "s")])?, Some(i)),
            ]
        }
        _ => return Err("Koszul factorizations are set up for OG(1,5) and Gr(2,4)".into()),
    };
    let mut out = Vec::new();
    for (w, c, ext) in cases {
        let mut k = center_decompose(&w, &c, ext).map_err(err)?;
        if a.fault {
            let last = k.cofactors.len() - 1;
            k.cofactors[last] = &k.cofactors[last] + &RationalFunction::one();
        }
        let rep = koszul_report(&k).map_err(err)?;
        let label: Vec<String> = w.variables.iter().map(|v| format!("{v}={}", c[v])).collect();
        let label = format!("center ({})", label.join(", "));
        r.line(format!("{label}: lambda = {}", k.lambda));
        for (v, f) in k.variables.iter().zip(&k.cofactors) {
            r.line(format!("  f_{v} = {f}"));
        }
        let ok = rep.basis.iter().filter(|b| b.square_ok && b.odd).count();
        let detail = format!("{ok}/{} basis elements", rep.basis.len());
        if a.fault {
            r.verdict(&format!("fault detected, {label}"), !rep.passed, detail);
        } else {
            r.verdict(&label, rep.passed, detail);
        }
        out.push(json!({ "factorization": k.to_json(), "report": rep }));
    }
    r.data = json!(out);
    Ok(())
}

fn verify_covering(r: &mut RunReport, a: &CoveringArgs) -> Outcome {
    r.input("n", a.n);
    r.input("samples", a.samples);
    r.input("seed", a.seed);
    let rep = r.timed("sampling", || covering_check(a.n, a.samples, a.seed)).map_err(err)?;
    r.verdict(
        "sampled covering",
        rep.failures.is_empty() && rep.samples == a.samples,
        format!(
            "{} samples ({} with a vanishing p_k,n), {} constructed, {} failures",
            rep.samples,
            rep.degenerate_samples,
            rep.constructed,
            rep.failures.len()
        ),
    );
    let mut cert = serde_json::Value::Null;
    if (4..=8).contains(&a.n) {
        let c = r.timed("certificate", || covering_certificate(a.n)).map_err(err)?;
        r.verdict("certificate", c.complete, format!("{} vanishing patterns", c.patterns.len()));
        cert = json!(c);
    }
    r.data = json!({ "sampling": rep, "certificate": cert });
    Ok(())
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.10}{:+.10}i", z.re, z.im)
}

fn critical_cmd(r: &mut RunReport, a: &CriticalArgs) -> Outcome {
    let model = model_of(a.model, a.n)?;
    r.input("model", model);
    r.input("q", a.q);
    r.input("seed", a.seed);
    r.input("starts", a.starts);
    let cfg = SolveConfig { starts: a.starts, seed: a.seed, ..SolveConfig::default() };
    cfg.validate().map_err(err)?;
    let t = t_from_q(model, a.q).map_err(err)?;
    let solved = r.timed("solve", || solve_model(model, a.q, &cfg)).map_err(err)?;
    for c in &solved.charts {
        r.line(format!("chart {}: {} points", c.chart, c.points.len()));
    }
    for p in &solved.points {
        r.line(format!("  W = {}  residual {:.1e}  charts {}", fmt_c(p.value), p.residual, p.charts.join(",")));
    }
    let worst = solved.points.iter().map(|p| p.residual).fold(0.0, f64::max);
    r.verdict("residuals", worst <= KNOWN_RESIDUAL_TOL, format!("max residual {worst:.2e}"));
    let scale = t.max(1.0);
    let mirror_ok = solved.points.iter().all(|p| (p.value - p.mirror_value).norm() <= VALUE_TOL * scale);
    r.verdict("mirror values", mirror_ok, "chart values agree with the mirror potential");
    match solved.expected_count {
        Some(e) => r.verdict("count", solved.points.len() == e, format!("{} points, expected {e}", solved.points.len())),
        None => r.line(format!("{} points (no predicted count)", solved.points.len())),
    }
    let mut table = serde_json::Value::Null;
    if let Ok(want) = known_values(model) {
        let want: Vec<Complex64> = want.iter().map(|z| z * t).collect();
        r.verdict(
            "values",
            multiset_match(&solved.values(), &want, VALUE_TOL * scale),
            format!("expected {}", want.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>().join(", ")),
        );
        if a.q == 1.0 {
            let known = verify_known(model).map_err(err)?;
            r.verdict("closed forms", known.passed(), format!("{} closed-form points", known.count));
            let rows = match_table(&solved, &known_points(model).map_err(err)?, 1e-6);
            let matched = rows.iter().filter(|m| m.found.is_some()).count();
            r.verdict("matched", matched == rows.len(), format!("{matched}/{} closed-form points found", rows.len()));
            table = json!({ "known": known, "matches": rows });
        }
    }
    r.data = json!({ "solve": solved, "closed_forms": table });
    Ok(())
}

fn parse_valuations(s: &str) -> Result<BTreeMap<Var, Coeff>, String> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("bad valuation `{part}`"))?;
        let v = Coeff::from_str(v.trim()).map_err(|_| format!("bad valuation `{part}`"))?;
        out.insert(var(k.trim()), v);
    }
    Ok(out)
}

fn expand_cmd(r: &mut RunReport, a: &ExpandArgs) -> Outcome {
    r.input("expr", &a.expr);
    r.input("val", &a.val);
    r.input("order", &a.order);
    let e = parse(&a.expr).map_err(err)?;
    let vals = parse_valuations(&a.val)?;
    let order = Coeff::from_str(&a.order).map_err(|_| format!("bad order `{}`", a.order))?;
    let s = novikov_expand(&e, &vals, &order).map_err(err)?;
    for (k, c) in s.terms() {
        r.line(format!("T^{k}: {c}"));
    }
    r.line(format!("+ O(T^{order})"));
    r.verdict("expansion", true, format!("{} terms below T^{order}", s.terms().len()));

    // The geometric series of the default expression, term by term.
    let zero_default = |v: &str| vals.get(&var(v)).cloned().unwrap_or_else(|| Coeff::from_integer(0.into()));
    let default = e.equal(&parse("v/((u*v - 1)*z0)").map_err(err)?)
        && zero_default("u") == Coeff::from_integer(1.into())
        && zero_default("v") == Coeff::from_integer(0.into())
        && zero_default("z0") == Coeff::from_integer(0.into());
    if default {
        let top = order.ceil().to_integer();
        let mut ok = true;
        let mut i = 0i32;
        while Coeff::from_integer(i.into()) < order {
            let m = Monomial::from_pairs([(var("u"), i), (var("v"), i + 1), (var("z0"), -1)]);
            let want = LaurentPoly::term(m, Coeff::from_integer((-1).into()));
            ok &= s.coefficient(&Coeff::from_integer(i.into())) == want;
            i += 1;
        }
        r.verdict("geometric series", ok, format!("coefficient of T^i is -(uv)^i v/z0 for i < {top}"));
    }
    r.data = json!({
        "terms": s.terms().iter().map(|(k, c)| (k.to_string(), c.to_string())).collect::<Vec<_>>(),
        "order": order.to_string(),
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("1,2;3,4").unwrap(), vec![(1, 2), (3, 4)]);
        assert_eq!(parse_pairs(" ").unwrap(), vec![]);
        assert!(parse_pairs("1,2,3").is_err());
        assert!(parse_pairs("a,b").is_err());
        assert_eq!(pairs_label(&[(1, 2), (3, 4)]), "{(1,2),(3,4)}");
    }

    #[test]
    fn valuations() {
        let v = parse_valuations("u=1, v=-1/2").unwrap();
        assert_eq!(v[&var("v")], Coeff::new((-1).into(), 2.into()));
        assert!(parse_valuations("u").is_err());
    }
}
