use std::collections::BTreeSet;

use gc_combinatorics::polytope::{face_of_diagram, faces, in_relative_interior, point_from_map};
use gc_combinatorics::{chart_subdivision, index_sets, Ladder};
use proptest::prelude::*;

fn dims_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v
}

#[test]
fn diagrams_match_the_face_oracle() {
    for n in 4..=5 {
        let l = Ladder::new(n).unwrap();
        let diagrams = l.admissible_diagrams();
        let (verts, oracle) = faces(n);
        assert_eq!(diagrams.len(), oracle.len(), "n = {n}");
        let dd: Vec<usize> = diagrams.iter().map(|d| l.dimension(*d) as usize).collect();
        let fd: Vec<usize> = oracle.iter().map(|f| f.dimension).collect();
        assert_eq!(dims_sorted(dd), dims_sorted(fd));
        // The explicit map is a dimension-preserving bijection.
        let images: BTreeSet<_> = diagrams
            .iter()
            .map(|d| {
                let f = face_of_diagram(&l, *d, &verts);
                assert_eq!(f.dimension, l.dimension(*d) as usize);
                f
            })
            .collect();
        let all: BTreeSet<_> = oracle.into_iter().collect();
        assert_eq!(images, all);
    }
}

#[test]
fn inclusion_order_is_preserved() {
    let l = Ladder::new(4).unwrap();
    let (verts, _) = faces(4);
    let ds = l.admissible_diagrams();
    for a in &ds {
        for b in &ds {
            if a & !b == 0 {
                let fa = face_of_diagram(&l, *a, &verts);
                let fb = face_of_diagram(&l, *b, &verts);
                assert!(fa.vertices.is_subset(&fb.vertices));
            }
        }
    }
}

#[test]
fn lagrangian_faces_are_indexed_by_pair_sets() {
    for (n, want) in [(4, 2), (5, 3), (6, 5), (7, 8)] {
        let l = Ladder::new(n).unwrap();
        let lag: BTreeSet<u64> =
            l.admissible_diagrams().into_iter().filter(|d| l.classify(*d).lagrangian).collect();
        assert_eq!(lag.len(), want, "n = {n}");
        let (all, _) = index_sets(n);
        let from_pairs: BTreeSet<u64> = all.iter().map(|s| l.lagrangian_diagram(s).unwrap()).collect();
        assert_eq!(lag, from_pairs);
        for d in lag {
            let c = l.classify(d);
            assert_eq!(c.n1 + 4 * c.n2, 2 * (n - 2));
            let u = point_from_map(n, &l.monotone_point(d).unwrap());
            assert!(in_relative_interior(&l, d, &u));
        }
    }
}

#[test]
fn non_lagrangian_diagrams_fail_the_count() {
    let l = Ladder::new(5).unwrap();
    for d in l.admissible_diagrams() {
        let c = l.classify(d);
        if !c.lagrangian {
            assert!(l.monotone_point(d).is_err());
        }
    }
}

proptest! {
    #[test]
    fn subdivision_cell_counts(n in 4u32..12, seed in any::<u64>()) {
        let (all, _) = index_sets(n);
        let s = &all[(seed % all.len() as u64) as usize];
        let sub = chart_subdivision(n, s).unwrap();
        prop_assert_eq!(sub.quadrilaterals(), s.len());
        prop_assert_eq!(sub.triangles(), (n - 2) as usize - 2 * s.len());
        prop_assert_eq!(sub.diagonals.len(), (n - 3) as usize - s.len());
        // Cells tile the polygon: the areas in triangles add up to n - 2.
        let area: usize = sub.cells.iter().map(|c| c.vertices.len() - 2).sum();
        prop_assert_eq!(area, (n - 2) as usize);
    }

    #[test]
    fn unions_of_admissible_diagrams_are_admissible(n in 4u32..7, a in any::<u64>(), b in any::<u64>()) {
        let l = Ladder::new(n).unwrap();
        let ds = l.admissible_diagrams();
        let x = ds[(a % ds.len() as u64) as usize];
        let y = ds[(b % ds.len() as u64) as usize];
        prop_assert!(l.is_admissible(x | y));
        prop_assert!(l.dimension(x | y) >= l.dimension(x).max(l.dimension(y)));
    }
}
