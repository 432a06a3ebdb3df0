//! The twelve acceptance criteria, each run against its tolerance and time
//! limit. Prints one line per criterion. The test fails if any criterion
//! fails, except criterion 2 whose known deviation is pinned exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, SQRT_2};
use std::time::{Duration, Instant};

use atlas_gluing::{gauge_automorphism, gr24_atlas, local_atlas, og15_atlas};
use critical_solver::{eval::eval_f64, solve_model, SolveConfig};
use exact_algebra::{rat, rf, var, LaurentPoly, Monomial, RationalFunction};
use gc_combinatorics::index_sets;
use lgmirror::{run, RunReport};
use num_complex::Complex64;
use plucker::{covering_certificate, equal_mod_plucker, geometric_to_plucker, PluckerExpression};
use potentials::{immersed_potential, rietsch_gr, t_to_q, Model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// The two n = 6 displays, transcribed into the `z1,j` / `z2,j` naming.
const W23_PRINTED: &str = "u2 + u2*z1,2/z2,3 + v2*z2,3/z2,1 + v2*z1,4/((u2*v2 - 1)*z1,2) + T^6/z1,4 + z1,4/z2,4 \
                           + z2,4/z2,3 + z1,2/z1,1 + z1,1/z2,1 + 1/z2,1";
const W1234_PRINTED: &str = "u1 + u1*z1,1/z2,2 + v1*z2,2 + v1*z1,3/((u1*v1-1)*z1,1) + u3 + u3*z1,3/z2,4 \
                             + v3*z2,4/z2,2 + v3*T^6/((u3*v3 - 1)*z1,3)";

struct Outcome {
    pass: bool,
    /// Fails for a documented reason that was checked to be exactly that reason.
    pinned: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, pinned: false, detail: detail.into() }
}

#[derive(Debug, PartialEq)]
enum Status {
    Pass,
    Pinned,
    Fail,
}

fn cli(args: &str) -> (RunReport, i32) {
    let mut argv = vec!["lgmirror".to_string()];
    argv.extend(args.split_whitespace().map(str::to_string));
    run(&argv)
}

/// All verdicts of a command pass and it exits 0.
fn cli_ok(args: &str) -> Result<RunReport, String> {
    let (r, code) = cli(args);
    if code == 0 && r.passed() {
        Ok(r)
    } else {
        let bad: Vec<String> =
            r.verdicts.iter().filter(|v| !v.pass).map(|v| format!("{}: {}", v.check, v.detail)).collect();
        Err(format!("`{args}` exit {code}: {}", bad.join("; ")))
    }
}

fn check(number: u32, limit: Duration, f: impl FnOnce() -> Outcome) -> Status {
    let t = Instant::now();
    let o = f();
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    let status = match (o.pass, o.pinned) {
        (true, _) if in_time => Status::Pass,
        (false, true) if in_time => Status::Pinned,
        _ => Status::Fail,
    };
    println!(
        "criterion {number}: {} ({:.2} s, limit {} s) {}",
        match status {
            Status::Pass => "PASS",
            Status::Pinned => "FAIL (known deviation)",
            Status::Fail => "FAIL",
        },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        o.detail
    );
    status
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn multiset_close(found: &[Complex64], want: &[Complex64], tol: f64) -> bool {
    let mut left = want.to_vec();
    found.len() == want.len()
        && found.iter().all(|z| match left.iter().position(|w| (z - w).norm() <= tol) {
            Some(k) => {
                left.swap_remove(k);
                true
            }
            None => false,
        })
}

fn identity_holds(n: u32, pairs: &[(u32, u32)], w: &RationalFunction) -> bool {
    let b = geometric_to_plucker(n, pairs).unwrap();
    let s = t_to_q(&w.substitute(&b.bindings).unwrap(), n).unwrap();
    equal_mod_plucker(&PluckerExpression::new(s, n).unwrap(), &rietsch_gr(n).unwrap()).unwrap()
}

fn c1() -> Outcome {
    match cli_ok("verify rietsch --model gr --n 4 --pairs 1,2") {
        Ok(_) => outcome(true, "W_(1,2) equals W_Rie under the Plucker bindings"),
        Err(e) => outcome(false, e),
    }
}

/// 2a: the identity on both maximal charts. 2b: the printed potentials come
/// out verbatim. 2b is a known deviation: the printed W_(2,3) has `1/z2,1`
/// where the identity needs `z2,1`. The test pins exactly that deviation.
fn c2() -> Outcome {
    let identities = cli_ok("verify rietsch --model gr --n 6");
    let a_ok = identities.as_ref().is_ok_and(|r| r.verdicts.len() == index_sets(6).1.len());
    let w1234 = immersed_potential(6, &[(1, 2), (3, 4)]).unwrap();
    let w23 = immersed_potential(6, &[(2, 3)]).unwrap();
    let verbatim_1234 = w1234.expr == rf(W1234_PRINTED);
    let verbatim_23 = w23.expr == rf(W23_PRINTED);
    let gap = &w23.expr - &rf(W23_PRINTED);
    let pinned = verbatim_1234
        && !verbatim_23
        && gap == rf("z2,1 - 1/z2,1")
        && identity_holds(6, &[(2, 3)], &w23.expr)
        && !identity_holds(6, &[(2, 3)], &rf(W23_PRINTED));
    println!("  2a identities on both maximal charts: {}", if a_ok { "PASS" } else { "FAIL" });
    println!(
        "  2b printed forms verbatim: {} (W_(1,2),(3,4) {}; W_(2,3) {}, computed minus printed = {gap})",
        if verbatim_1234 && verbatim_23 { "PASS" } else { "FAIL" },
        if verbatim_1234 { "matches" } else { "differs" },
        if verbatim_23 { "matches" } else { "differs" },
    );
    let detail = match &identities {
        Err(e) => e.clone(),
        Ok(_) if pinned => "identities hold; printed W_(2,3) is off by exactly z2,1 - 1/z2,1 and fails the identity".into(),
        Ok(_) => "identities hold, but the printed-form comparison changed".into(),
    };
    let verbatim = verbatim_1234 && verbatim_23;
    Outcome { pass: a_ok && verbatim, pinned: a_ok && pinned, detail }
}

fn c3() -> Outcome {
    match cli_ok("verify rietsch --model og15") {
        Ok(_) => outcome(true, "OG(1,5) L0 potential equals W_Rie with q = T^3"),
        Err(e) => outcome(false, e),
    }
}

fn critical(model: Model, args: &str, want: Vec<Complex64>, count: usize) -> Outcome {
    if let Err(e) = cli_ok(args) {
        return outcome(false, e);
    }
    // Recount through the library and compare with the values listed here.
    let solved = solve_model(model, 1.0, &SolveConfig::default()).unwrap();
    let values = solved.values();
    let residual = solved.points.iter().map(|p| p.residual).fold(0.0, f64::max);
    let ok = solved.points.len() == count && multiset_close(&values, &want, 1e-8) && residual <= 1e-10;
    outcome(ok, format!("{} points, max residual {residual:.1e}", solved.points.len()))
}

fn c4() -> Outcome {
    let mut want: Vec<Complex64> = (0..4).map(|j| Complex64::i().powi(j) * (4.0 * SQRT_2)).collect();
    want.extend([Complex64::new(0.0, 0.0); 2]);
    critical(Model::Gr2n(4), "critical --model gr --n 4", want, 6)
}

fn c5() -> Outcome {
    let mut want: Vec<Complex64> =
        (0..3).map(|j| Complex64::from_polar(3.0 * 4f64.powf(1.0 / 3.0), 2.0 * PI * j as f64 / 3.0)).collect();
    want.push(Complex64::new(0.0, 0.0));
    critical(Model::Og15, "critical --model og15", want, 4)
}

fn lagrangian_types(r: &RunReport) -> BTreeSet<String> {
    r.data["lagrangian"].as_array().unwrap().iter().map(|f| f["diffeo_type"].as_str().unwrap().to_string()).collect()
}

fn c6() -> Outcome {
    let (r4, r6) = match (cli_ok("faces --n 4"), cli_ok("faces --n 6")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e),
    };
    let t4 = lagrangian_types(&r4);
    let n6 = r6.data["lagrangian"].as_array().unwrap().len();
    let want4: BTreeSet<String> = ["S^3 x S^1", "T^4"].iter().map(|s| s.to_string()).collect();
    // Monotone points by the rule, recomputed here for Gr(2,4).
    let pts: BTreeMap<String, serde_json::Value> = r4.data["lagrangian"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["diffeo_type"].as_str().unwrap().to_string(), f["monotone_point"].clone()))
        .collect();
    let torus = serde_json::json!({ "u1,1": 0, "u1,2": 1, "u2,1": -1, "u2,2": 0 });
    let block = serde_json::json!({ "u1,1": 0, "u1,2": 0, "u2,1": 0, "u2,2": 0 });
    let rule = pts.get("T^4") == Some(&torus) && pts.get("S^3 x S^1") == Some(&block);
    outcome(t4 == want4 && n6 == 5 && rule, format!("Gr(2,4) types {t4:?}, Gr(2,6) {n6} faces"))
}

fn c7() -> Outcome {
    let mut details = Vec::new();
    for n in [4, 5] {
        match cli_ok(&format!("faces --n {n}")) {
            Ok(r) if r.verdict_named("oracle").is_some() => details.push(r.verdict_named("oracle").unwrap().detail.clone()),
            Ok(_) => return outcome(false, format!("n = {n}: no oracle comparison")),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(true, details.join("; "))
}

fn c8() -> Outcome {
    let mut runs = 0;
    for model in ["local", "gr --n 4", "gr --n 6", "og15"] {
        for kind in ["cocycle", "transport"] {
            for fault in ["", " --fault"] {
                if let Err(e) = cli_ok(&format!("verify {kind} --model {model}{fault}")) {
                    return outcome(false, e);
                }
                runs += 1;
            }
        }
    }
    // The specific faults: a squared wall factor, a flipped sign, a wrong OG binding.
    let squared = local_atlas().with_binding("L2", "L1", "y1", rf("y2*(1 + x2)^2")).unwrap();
    let flipped = gr24_atlas().with_potential("L1", rf("1/(x1*y1*z1) - 1/(y1*z1) + y1 + y1*z1/w1 + x1*w1/y1 + w1/y1"));
    let og = og15_atlas().with_binding("L2'", "L2", "z2", rf("y1,3/y1,2")).unwrap();
    let faults = !squared.verify_cocycle().passed()
        && !flipped.verify_potential_transport().passed()
        && !og.verify_potential_transport().passed();
    outcome(faults, format!("{runs} runs clean, named faults detected: {faults}"))
}

fn c9() -> Outcome {
    let r = match cli_ok("expand --expr v/((u*v-1)*z0) --val u=1,v=0,z0=0 --order 5") {
        Ok(r) => r,
        Err(e) => return outcome(false, e),
    };
    // -v/z0 * sum (uv)^i, written out independently.
    let terms = r.data["terms"].as_array().unwrap();
    let ok = terms.len() == 5
        && terms.iter().enumerate().all(|(i, t)| {
            let m = Monomial::from_pairs([(var("u"), i as i32), (var("v"), i as i32 + 1), (var("z0"), -1)]);
            let want = LaurentPoly::term(m, rat(-1, 1));
            t[0].as_str() == Some(i.to_string().as_str()) && exact_algebra::parse_poly(t[1].as_str().unwrap()).unwrap() == want
        });
    outcome(ok && r.verdict_named("geometric series").is_some(), "coefficient -(uv)^i v/z0 for i = 0..4")
}

fn c10() -> Outcome {
    let mut detail = Vec::new();
    for (args, basis, centers) in [("verify koszul --model og15", 8, 1), ("verify koszul --model gr --n 4", 16, 2)] {
        let r = match cli_ok(args) {
            Ok(r) => r,
            Err(e) => return outcome(false, e),
        };
        let cases = r.data.as_array().unwrap();
        let sizes_ok = cases.len() == centers
            && cases.iter().all(|c| {
                let b = c["report"]["basis"].as_array().unwrap();
                b.len() == basis && b.iter().all(|e| e["square_ok"] == true)
            });
        if !sizes_ok {
            return outcome(false, format!("{args}: wrong basis size or failed element"));
        }
        detail.push(format!("{basis} basis elements x {centers}"));
    }
    outcome(true, detail.join(", "))
}

fn c11() -> Outcome {
    for n in [5, 6] {
        match cli_ok(&format!("verify covering --n {n} --samples 1000")) {
            Ok(r) if r.data["sampling"]["samples"] == 1000 && r.data["sampling"]["failures"].as_array().unwrap().is_empty() => {}
            Ok(_) => return outcome(false, format!("n = {n}: sample count or failures")),
            Err(e) => return outcome(false, e),
        }
    }
    let complete = (4..=6).all(|n| covering_certificate(n).unwrap().complete);
    outcome(complete, "1000 samples each for n = 5, 6; certificates complete for n = 4..6")
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_expression(rng: &mut ChaCha8Rng) -> RationalFunction {
    let poly = |rng: &mut ChaCha8Rng, terms: usize| {
        let s: Vec<String> = (0..terms)
            .map(|_| {
                let c = rng.random_range(1..6) * if rng.random_bool(0.5) { 1 } else { -1 };
                let mono: Vec<String> =
                    VARS.iter().map(|v| format!("{v}^{}", rng.random_range(-1..3))).collect();
                format!("({c})*{}", mono.join("*"))
            })
            .collect();
        rf(&s.join(" + "))
    };
    let num = poly(rng, 3);
    let mut den = poly(rng, 2);
    while den.is_zero() {
        den = poly(rng, 2);
    }
    num.checked_div(&den).unwrap()
}

fn at(pt: &[Complex64]) -> BTreeMap<String, Complex64> {
    VARS.iter().map(|v| v.to_string()).zip(pt.iter().copied()).collect()
}

fn c12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let none = BTreeMap::new();
    // Derivatives against central differences.
    let (mut compared, mut worst) = (0, 0.0f64);
    for _ in 0..200 {
        let e = random_expression(&mut rng);
        let k = rng.random_range(0..3);
        let pt: Vec<Complex64> =
            (0..3).map(|_| Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI))).collect();
        let h = 1e-6;
        let mut plus = pt.clone();
        let mut minus = pt.clone();
        plus[k] += h;
        minus[k] -= h;
        let vals = (eval_f64(&e.partial(VARS[k]), &at(&pt), &none), eval_f64(&e, &at(&plus), &none), eval_f64(&e, &at(&minus), &none));
        if let (Some(d), Some(fp), Some(fm)) = vals {
            if fp.norm().max(fm.norm()) > 1e4 {
                continue;
            }
            let fd = (fp - fm) / (2.0 * h);
            worst = worst.max((d - fd).norm() / (1.0 + d.norm()));
            compared += 1;
        }
    }
    let derivative_ok = compared >= 150 && worst <= 1e-5;

    // Substitution respects equality: rewrite e, substitute both forms.
    let mut congruent = 0;
    for _ in 0..200 {
        let e = random_expression(&mut rng);
        let t = random_expression(&mut rng);
        let s = random_expression(&mut rng);
        let f = &(&(&e * &t).checked_div(&t).unwrap() + &s) - &s;
        let img = random_expression(&mut rng);
        let sigma: BTreeMap<_, _> = [(var(VARS[rng.random_range(0..3)]), img)].into_iter().collect();
        let same = e.equal(&f)
            && match (e.substitute(&sigma), f.substitute(&sigma)) {
                (Ok(a), Ok(b)) => a.equal(&b),
                (Err(_), Err(_)) => true,
                _ => false,
            };
        congruent += same as usize;
    }

    // uv is fixed by every gauge automorphism, and gauge(k) gauge(-k) = id.
    let gauge_ok = (-3..=3).all(|k| {
        let g = gauge_automorphism(k);
        let back = gauge_automorphism(-k);
        let uv = g.pull_back(&rf("u*v")).unwrap();
        let round = back.pull_back(&g.pull_back(&rf("u")).unwrap()).unwrap();
        uv.equal(&rf("u*v")) && round.equal(&rf("u"))
    });
    outcome(
        derivative_ok && congruent == 200 && gauge_ok,
        format!("{compared} derivative checks (worst {worst:.1e}), {congruent}/200 congruent, gauge k in -3..3: {gauge_ok}"),
    )
}

#[test]
fn acceptance() {
    let results = [
        check(1, secs(5), c1),
        check(2, secs(30), c2),
        check(3, secs(5), c3),
        check(4, secs(60), c4),
        check(5, secs(30), c5),
        check(6, secs(10), c6),
        check(7, secs(60), c7),
        check(8, secs(30), c8),
        check(9, secs(1), c9),
        check(10, secs(10), c10),
        check(11, secs(10), c11),
        check(12, secs(60), c12),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, s)| **s == Status::Fail).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    // Only criterion 2 may carry a known deviation.
    let pinned: Vec<usize> = results.iter().enumerate().filter(|(_, s)| **s == Status::Pinned).map(|(i, _)| i + 1).collect();
    assert!(pinned.iter().all(|&k| k == 2), "unexpected pinned criteria: {pinned:?}");
}
