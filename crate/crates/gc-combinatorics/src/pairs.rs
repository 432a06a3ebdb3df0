//! Sets of disjoint consecutive pairs and the n-gon subdivisions they label.

use serde::Serialize;

use crate::error::GcError;

/// Pairs `(i, i+1)` with `1 <= i <= n-3`, sorted, pairwise disjoint.
pub type PairSet = Vec<(u32, u32)>;

pub fn validate_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<PairSet, GcError> {
    let mut out: PairSet = pairs.to_vec();
    out.sort();
    out.dedup();
    for &(i, k) in &out {
        if k != i + 1 || i < 1 || k > n.saturating_sub(2) {
            return Err(GcError::BadPair(i, k));
        }
    }
    for w in out.windows(2) {
        if w[1].0 <= w[0].1 {
            return Err(GcError::OverlappingPairs);
        }
    }
    Ok(out)
}

/// All admissible pair sets and the maximal ones under inclusion.
pub fn index_sets(n: u32) -> (Vec<PairSet>, Vec<PairSet>) {
    let cands: Vec<(u32, u32)> = (1..n.saturating_sub(2)).map(|i| (i, i + 1)).collect();
    let mut all = Vec::new();
    for mask in 0u32..(1 << cands.len()) {
        let s: PairSet =
            cands.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| *p).collect();
        if validate_pairs(n, &s).is_ok() {
            all.push(s);
        }
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let maximal = all
        .iter()
        .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.iter().all(|p| t.contains(p))))
        .cloned()
        .collect();
    (all, maximal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Polygon vertex labels in boundary order.
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonSubdivision {
    pub n: u32,
    pub cells: Vec<Cell>,
    pub diagonals: Vec<(u32, u32)>,
}

impl PolygonSubdivision {
    pub fn quadrilaterals(&self) -> usize {
        self.cells.iter().filter(|c| c.vertices.len() == 4).count()
    }

    pub fn triangles(&self) -> usize {
        self.cells.iter().filter(|c| c.vertices.len() == 3).count()
    }
}

/// Fan triangulation from vertex `n` with the diagonal `(n, n-i-1)` removed
/// for each pair `(i, i+1)`.
pub fn chart_subdivision(n: u32, pairs: &[(u32, u32)]) -> Result<PolygonSubdivision, GcError> {
    if n < 4 {
        return Err(GcError::UnsupportedN(n));
    }
    let pairs = validate_pairs(n, pairs)?;
    let removed: Vec<u32> = pairs.iter().map(|(i, _)| n - i - 1).collect();
    let diagonals: Vec<(u32, u32)> =
        (2..=n - 2).filter(|k| !removed.contains(k)).map(|k| (n, k)).collect();
    let mut cells = Vec::new();
    let mut k = 1;
    while k <= n - 2 {
        if removed.contains(&(k + 1)) {
            cells.push(Cell { vertices: vec![n, k + 2, k + 1, k] });
            k += 2;
        } else {
            cells.push(Cell { vertices: vec![k, k + 1, n] });
            k += 1;
        }
    }
    Ok(PolygonSubdivision { n, cells, diagonals })
}

/// The two diagonals of the quadrilateral attached to `(i, i+1)`: the fan
/// diagonal `(n, n-i-1)` and its flip `(n-i-2, n-i)`.
pub fn flip_pair(n: u32, i: u32) -> ((u32, u32), (u32, u32)) {
    ((n, n - i - 1), (n - i - 2, n - i))
}
