//! The Gelfand-Cetlin polytope of Gr(2,n) in H-representation and a brute
//! force face enumerator used as an oracle for the diagram combinatorics.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::ladder::{Edge, EdgeMask, Ladder};

/// `sum coeffs[k] * u[k] + constant >= 0`, attached to one ladder edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<(usize, i64)>,
    pub constant: i64,
    pub edge: Edge,
}

impl Inequality {
    pub fn eval(&self, u: &[Rational64]) -> Rational64 {
        self.coeffs
            .iter()
            .fold(Rational64::from_integer(self.constant), |acc, (k, c)| acc + u[*k] * c)
    }
}

/// Index of `u_{i,j}` (1-based `i` in `{1,2}`, `j` in `1..=n-2`).
pub fn coord(n: u32, i: u32, j: u32) -> usize {
    ((i - 1) * (n - 2) + (j - 1)) as usize
}

pub fn dimension_of_space(n: u32) -> usize {
    2 * (n as usize - 2)
}

/// The `3n - 6` defining inequalities, with `u_{1,n-1} = n-2` and `u_{3,1} = -2`.
pub fn inequalities(n: u32) -> Vec<Inequality> {
    let h = n - 2;
    let mut out = Vec::new();
    for j in 1..=h {
        let (coeffs, constant) = if j < h {
            (vec![(coord(n, 1, j + 1), 1), (coord(n, 1, j), -1)], 0)
        } else {
            (vec![(coord(n, 1, j), -1)], (n - 2) as i64)
        };
        out.push(Inequality { coeffs, constant, edge: Edge::H { x: 0, y: j } });
    }
    for j in 1..h {
        out.push(Inequality {
            coeffs: vec![(coord(n, 2, j + 1), 1), (coord(n, 2, j), -1)],
            constant: 0,
            edge: Edge::H { x: 1, y: j },
        });
    }
    for j in 1..=h {
        out.push(Inequality {
            coeffs: vec![(coord(n, 1, j), 1), (coord(n, 2, j), -1)],
            constant: 0,
            edge: Edge::V { x: 1, y: j - 1 },
        });
    }
    out.push(Inequality { coeffs: vec![(coord(n, 2, 1), 1)], constant: 2, edge: Edge::V { x: 2, y: 0 } });
    out
}

pub fn contains_point(n: u32, u: &[Rational64]) -> bool {
    inequalities(n).iter().all(|q| !q.eval(u).is_negative())
}

/// Indices of the inequalities that are tight at `u`.
pub fn tight_set(n: u32, u: &[Rational64]) -> BTreeSet<usize> {
    inequalities(n).iter().enumerate().filter(|(_, q)| q.eval(u).is_zero()).map(|(k, _)| k).collect()
}

/// Solve the square system `A x = b` exactly; `None` if singular.
fn solve(mut a: Vec<Vec<Rational64>>, mut b: Vec<Rational64>) -> Option<Vec<Rational64>> {
    let d = b.len();
    for col in 0..d {
        let piv = (col..d).find(|r| !a[*r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        let pivot = a[col].clone();
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col] / p;
                for (x, v) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    Some((0..d).map(|k| b[k] / a[k][k]).collect())
}

/// Rank of a rational matrix by elimination.
pub fn rank(rows: &[Vec<Rational64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|k| !m[*k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c] / pivot[c];
                for (x, v) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn combinations(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..m {
        if m - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(m, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Vertices found by solving every square subsystem of tight inequalities.
pub fn vertices(n: u32) -> Vec<Vec<Rational64>> {
    let ineqs = inequalities(n);
    let d = dimension_of_space(n);
    let mut subsets = Vec::new();
    combinations(ineqs.len(), d, 0, &mut Vec::new(), &mut subsets);
    let mut found: BTreeSet<Vec<Rational64>> = BTreeSet::new();
    for s in subsets {
        let mut a = vec![vec![Rational64::zero(); d]; d];
        let mut b = vec![Rational64::zero(); d];
        for (r, &k) in s.iter().enumerate() {
            for &(c, v) in &ineqs[k].coeffs {
                a[r][c] = Rational64::from_integer(v);
            }
            b[r] = Rational64::from_integer(-ineqs[k].constant);
        }
        if let Some(x) = solve(a, b) {
            if contains_point(n, &x) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// A face given by its vertex set (indices into `vertices(n)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: BTreeSet<usize>,
    pub dimension: usize,
}

fn affine_dimension(verts: &[Vec<Rational64>], idx: &BTreeSet<usize>) -> usize {
    let mut it = idx.iter();
    let Some(&first) = it.next() else { return 0 };
    let rows: Vec<Vec<Rational64>> = it
        .map(|&k| verts[k].iter().zip(&verts[first]).map(|(a, b)| a - b).collect())
        .collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// Nonempty faces, from every subset of inequalities turned into equalities.
pub fn faces(n: u32) -> (Vec<Vec<Rational64>>, Vec<Face>) {
    let ineqs = inequalities(n);
    let verts = vertices(n);
    let tight: Vec<BTreeSet<usize>> = verts.iter().map(|v| tight_set(n, v)).collect();
    let mut seen: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for s in 0u64..(1u64 << ineqs.len()) {
        let vs: BTreeSet<usize> = (0..verts.len())
            .filter(|&v| (0..ineqs.len()).all(|k| s >> k & 1 == 0 || tight[v].contains(&k)))
            .collect();
        if vs.is_empty() || seen.contains_key(&vs) {
            continue;
        }
        let d = affine_dimension(&verts, &vs);
        seen.insert(vs, d);
    }
    let faces = seen.into_iter().map(|(vertices, dimension)| Face { vertices, dimension }).collect();
    (verts, faces)
}

/// The face picked out by a diagram: inequalities on edges missing from it
/// become equalities.
pub fn face_of_diagram(ladder: &Ladder, mask: EdgeMask, verts: &[Vec<Rational64>]) -> Face {
    let n = ladder.n();
    let ineqs = inequalities(n);
    let forced: Vec<usize> =
        (0..ineqs.len()).filter(|&k| !ladder.contains(mask, ineqs[k].edge)).collect();
    let vs: BTreeSet<usize> = (0..verts.len())
        .filter(|&v| forced.iter().all(|&k| ineqs[k].eval(&verts[v]).is_zero()))
        .collect();
    let dimension = affine_dimension(verts, &vs);
    Face { vertices: vs, dimension }
}

/// Point of `Q^{2(n-2)}` from a `(i, j) -> value` map.
pub fn point_from_map(n: u32, u: &BTreeMap<(u32, u32), i64>) -> Vec<Rational64> {
    let mut out = vec![Rational64::zero(); dimension_of_space(n)];
    for (&(i, j), &v) in u {
        out[coord(n, i, j)] = Rational64::from_integer(v);
    }
    out
}

/// Whether `u` lies in the relative interior of the face of `mask`: tight
/// exactly on the inequalities of the edges missing from the diagram.
pub fn in_relative_interior(ladder: &Ladder, mask: EdgeMask, u: &[Rational64]) -> bool {
    let n = ladder.n();
    contains_point(n, u)
        && inequalities(n).iter().all(|q| q.eval(u).is_zero() == !ladder.contains(mask, q.edge))
}
