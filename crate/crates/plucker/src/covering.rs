//! Membership in the charts `U_I` and the covering of the complement of the
//! divisor by the maximal ones.

use std::collections::BTreeMap;

use exact_algebra::{int, var, Coeff, LaurentPoly};
use gc_combinatorics::{index_sets, PairSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coords::{p_name, plucker_relation};
use crate::error::PluckerError;
use crate::point::{random_point, small_rows, GrassmannPoint, PointJson};

/// Membership given a zero test on coordinates: `p_{n-i-1,n} != 0` for every
/// `i` with `(i, i+1)` not in `pairs`.
pub fn chart_membership_by(n: u32, pairs: &[(u32, u32)], is_zero: impl Fn(u32, u32) -> bool) -> bool {
    (1..=n - 3).all(|i| pairs.contains(&(i, i + 1)) || !is_zero(n - i - 1, n))
}

pub fn chart_membership(pt: &GrassmannPoint, pairs: &[(u32, u32)]) -> bool {
    use num_traits::Zero;
    chart_membership_by(pt.n, pairs, |i, j| pt.get(i, j).is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub n: u32,
    pub samples: usize,
    /// Samples with at least one `p_{k,n} = 0`, `2 <= k <= n-2`.
    pub degenerate_samples: usize,
    /// Points built with a chosen `p_{k,n} = 0`.
    pub constructed: usize,
    pub failures: Vec<PointJson>,
}

fn covered(pt: &GrassmannPoint, maximal: &[PairSet]) -> bool {
    maximal.iter().any(|s| chart_membership(pt, s))
}

fn has_vanishing_pn(pt: &GrassmannPoint) -> bool {
    use num_traits::Zero;
    (2..=pt.n - 2).any(|k| pt.get(k, pt.n).is_zero())
}

/// Falsification test of the covering by the maximal charts.
///
/// Half the samples are generic random points, half come from small integer
/// matrices so that coordinates vanish often. Every `k` also gets points with
/// row `k` a multiple of row `n`.
pub fn covering_check(n: u32, num_samples: usize, seed: u64) -> Result<CoveringReport, PluckerError> {
    let (_, maximal) = index_sets(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CoveringReport { n, samples: 0, degenerate_samples: 0, constructed: 0, failures: Vec::new() };
    let check = |pt: GrassmannPoint, report: &mut CoveringReport| {
        if !covered(&pt, &maximal) {
            report.failures.push(pt.to_json());
        }
    };
    for s in 0..num_samples {
        let pt = if s % 2 == 0 {
            random_point(n, seed.wrapping_add(s as u64))?
        } else {
            let mut tries = 0;
            loop {
                if let Ok(pt) = GrassmannPoint::from_matrix(&small_rows(n, &mut rng)) {
                    break pt;
                }
                tries += 1;
                if tries == 1000 {
                    return Err(PluckerError::RetryBudget);
                }
            }
        };
        report.samples += 1;
        if has_vanishing_pn(&pt) {
            report.degenerate_samples += 1;
        }
        check(pt, &mut report);
    }
    for k in 2..=n - 2 {
        for _ in 0..10 {
            let mut rows = small_rows(n, &mut rng);
            let c = int(2);
            rows[k as usize - 1] = (&rows[n as usize - 1].0 * &c, &rows[n as usize - 1].1 * &c);
            if let Ok(pt) = GrassmannPoint::from_matrix(&rows) {
                report.constructed += 1;
                check(pt, &mut report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub enum PatternOutcome {
    /// Realized off the divisor, and inside the chart of these pairs.
    Covered { chart: PairSet, witness: PointJson },
    /// `p_{k,n} = p_{k+1,n} = 0` forces `p_{1,n} p_{k,k+1} = 0`.
    ForcesDivisor { k: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub n: u32,
    /// Vanishing set `Z` of `{p_{k,n} : 2 <= k <= n-2}` and its resolution.
    pub patterns: Vec<(Vec<u32>, PatternOutcome)>,
    pub complete: bool,
}

/// Exact covering argument by case analysis on which `p_{k,n}` vanish.
///
/// A pattern with two consecutive zeros lies on the divisor by the relation
/// on `(1, k, k+1, n)`. Any other pattern picks out disjoint pairs, which sit
/// inside some maximal pair set whose chart contains every such point; an
/// explicit matrix shows each pattern occurs.
pub fn covering_certificate(n: u32) -> Result<CertificateReport, PluckerError> {
    if !(4..=8).contains(&n) {
        return Err(PluckerError::Pairs(gc_combinatorics::GcError::UnsupportedN(n)));
    }
    let (_, maximal) = index_sets(n);
    let ks: Vec<u32> = (2..=n - 2).collect();
    let mut patterns = Vec::new();
    let mut complete = true;
    for mask in 0u32..(1 << ks.len()) {
        let zs: Vec<u32> = ks.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, k)| *k).collect();
        if let Some(&k) = zs.iter().find(|k| zs.contains(&(**k + 1))) {
            let rel = plucker_relation(1, k, k + 1, n, n)?;
            let zero: BTreeMap<_, _> =
                [(var(&p_name(k, n)), LaurentPoly::zero()), (var(&p_name(k + 1, n)), LaurentPoly::zero())]
                    .into_iter()
                    .collect();
            let reduced = rel.substitute_poly(&zero).expect("polynomial");
            let want = &LaurentPoly::var(&p_name(1, n)) * &LaurentPoly::var(&p_name(k, k + 1));
            complete &= reduced == want;
            patterns.push((zs, PatternOutcome::ForcesDivisor { k }));
            continue;
        }
        let pairs: PairSet = zs.iter().map(|k| (n - 1 - k, n - k)).collect();
        let Some(chart) = maximal.iter().find(|m| pairs.iter().all(|p| m.contains(p))).cloned() else {
            complete = false;
            continue;
        };
        // Rows on a parabola have all minors nonzero; rows in Z are put on
        // the line through row n = (0, 1).
        let rows: Vec<(Coeff, Coeff)> = (1..=n)
            .map(|i| {
                if i == n {
                    (int(0), int(1))
                } else if zs.contains(&i) {
                    (int(0), int(i as i64))
                } else {
                    (int(i as i64), int((i * i) as i64))
                }
            })
            .collect();
        let pt = GrassmannPoint::from_matrix(&rows)?;
        use num_traits::Zero;
        let realized: Vec<u32> = ks.iter().copied().filter(|k| pt.get(*k, n).is_zero()).collect();
        complete &= realized == zs && chart_membership(&pt, &chart);
        patterns.push((zs, PatternOutcome::Covered { chart, witness: pt.to_json() }));
    }
    Ok(CertificateReport { n, patterns, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_points_lie_in_every_chart() {
        let pt = random_point(6, 5).unwrap();
        use num_traits::Zero;
        assert!((1..6).all(|k| !pt.get(k, 6).is_zero()));
        let (all, _) = index_sets(6);
        assert!(all.iter().all(|s| chart_membership(&pt, s)));
    }

    #[test]
    fn gr24_point_with_p13_zero() {
        // Row 3 is a multiple of row 1, so p1,3 = 0.
        let pt = GrassmannPoint::from_matrix(&[(int(1), int(0)), (int(1), int(1)), (int(2), int(0)), (int(1), int(-1))]);
        let pt = pt.unwrap();
        use num_traits::Zero;
        assert!(pt.get(1, 3).is_zero() && !pt.get(2, 4).is_zero());
        assert!(chart_membership(&pt, &[(1, 2)]));
        // p2,4 != 0 is the only requirement of the torus chart for n = 4.
        assert!(chart_membership(&pt, &[]));
        let on_wall = GrassmannPoint::from_matrix(&[(int(1), int(0)), (int(0), int(1)), (int(1), int(2)), (int(0), int(1))])
            .unwrap();
        assert!(on_wall.get(2, 4).is_zero());
        assert!(!chart_membership(&on_wall, &[]) && chart_membership(&on_wall, &[(1, 2)]));
    }

    #[test]
    fn membership_is_monotone() {
        for seed in 0..20 {
            let (all, _) = index_sets(7);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let Ok(pt) = GrassmannPoint::from_matrix(&small_rows(7, &mut rng)) else { continue };
            for a in &all {
                for b in &all {
                    if a.iter().all(|p| b.contains(p)) && chart_membership(&pt, a) {
                        assert!(chart_membership(&pt, b));
                    }
                }
            }
        }
    }

    #[test]
    fn consecutive_zeros_cannot_be_built() {
        // Rows 3 and 4 both multiples of row 6 make p3,4 vanish.
        let rows = vec![(int(1), int(1)), (int(1), int(2)), (int(0), int(2)), (int(0), int(3)), (int(1), int(5)), (int(0), int(1))];
        assert_eq!(GrassmannPoint::from_matrix(&rows), Err(PluckerError::OnDivisor(3, 4)));
    }

    #[test]
    fn certificates() {
        for n in 4..=7 {
            let c = covering_certificate(n).unwrap();
            assert!(c.complete, "n = {n}");
            assert_eq!(c.patterns.len(), 1 << (n - 3));
        }
    }
}
