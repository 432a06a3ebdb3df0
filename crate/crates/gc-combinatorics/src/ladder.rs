//! The (2 x (n-2)) ladder grid, its positive paths and admissible diagrams.
//!
//! Coordinates: `x` runs over `0..=2`, `y` over `0..=n-2`. Box `(i, j)` has its
//! upper-right corner at `(i, j)`, so it occupies `[i-1, i] x [j-1, j]`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::GcError;

/// An edge set, one bit per unit edge of the ladder.
pub type EdgeMask = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Edge {
    /// Segment from `(x, y)` to `(x + 1, y)`, `x` in `{0, 1}`.
    H { x: u32, y: u32 },
    /// Segment from `(x, y)` to `(x, y + 1)`, `x` in `{0, 1, 2}`.
    V { x: u32, y: u32 },
}

impl Edge {
    pub fn endpoints(self) -> [(u32, u32); 2] {
        match self {
            Edge::H { x, y } => [(x, y), (x + 1, y)],
            Edge::V { x, y } => [(x, y), (x, y + 1)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ladder {
    n: u32,
}

impl Ladder {
    pub fn new(n: u32) -> Result<Self, GcError> {
        // 5n - 8 edges must fit in the mask.
        if !(4..=14).contains(&n) {
            return Err(GcError::UnsupportedN(n));
        }
        Ok(Ladder { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of rows of boxes, `n - 2`.
    pub fn height(&self) -> u32 {
        self.n - 2
    }

    pub fn edge_count(&self) -> u32 {
        2 * (self.height() + 1) + 3 * self.height()
    }

    pub fn index(&self, e: Edge) -> u32 {
        match e {
            Edge::H { x, y } => 2 * y + x,
            Edge::V { x, y } => 2 * (self.height() + 1) + 3 * y + x,
        }
    }

    pub fn edge(&self, idx: u32) -> Edge {
        let h = 2 * (self.height() + 1);
        if idx < h {
            Edge::H { x: idx % 2, y: idx / 2 }
        } else {
            let k = idx - h;
            Edge::V { x: k % 3, y: k / 3 }
        }
    }

    pub fn bit(&self, e: Edge) -> EdgeMask {
        1 << self.index(e)
    }

    pub fn full(&self) -> EdgeMask {
        (1u64 << self.edge_count()) - 1
    }

    pub fn edges(&self, mask: EdgeMask) -> Vec<Edge> {
        (0..self.edge_count()).filter(|i| mask >> i & 1 == 1).map(|i| self.edge(i)).collect()
    }

    pub fn contains(&self, mask: EdgeMask, e: Edge) -> bool {
        mask & self.bit(e) != 0
    }

    /// All minimal-length lattice paths from `(0, 0)` to `(2, n-2)`.
    pub fn positive_paths(&self) -> Vec<EdgeMask> {
        let steps = self.n;
        let mut out = Vec::new();
        for a in 0..steps {
            for b in a + 1..steps {
                let (mut x, mut y) = (0, 0);
                let mut mask = 0;
                for s in 0..steps {
                    if s == a || s == b {
                        mask |= self.bit(Edge::H { x, y });
                        x += 1;
                    } else {
                        mask |= self.bit(Edge::V { x, y });
                        y += 1;
                    }
                }
                out.push(mask);
            }
        }
        out
    }

    /// Every distinct union of positive paths, ordered by edge count then mask.
    pub fn admissible_diagrams(&self) -> Vec<EdgeMask> {
        let paths = self.positive_paths();
        let mut seen: HashSet<EdgeMask> = paths.iter().copied().collect();
        let mut frontier: Vec<EdgeMask> = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for d in &frontier {
                for p in &paths {
                    let u = d | p;
                    if seen.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<EdgeMask> = seen.into_iter().collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// Whether `mask` is the union of the positive paths it contains.
    pub fn is_admissible(&self, mask: EdgeMask) -> bool {
        let cover = self
            .positive_paths()
            .into_iter()
            .filter(|p| p & !mask == 0)
            .fold(0, |acc, p| acc | p);
        mask != 0 && cover == mask
    }

    /// Number of bounded regions, `|E| - |V| + 1` for a connected edge set.
    pub fn dimension(&self, mask: EdgeMask) -> u32 {
        let edges = self.edges(mask);
        let verts: BTreeSet<(u32, u32)> = edges.iter().flat_map(|e| e.endpoints()).collect();
        (edges.len() + 1 - verts.len()) as u32
    }

    fn box_boundary(&self, i: u32, j: u32) -> [Edge; 4] {
        [
            Edge::H { x: i - 1, y: j - 1 },
            Edge::H { x: i - 1, y: j },
            Edge::V { x: i - 1, y: j - 1 },
            Edge::V { x: i, y: j - 1 },
        ]
    }

    /// Pieces cut out by the diagram: boxes glued across edges not in `mask`.
    pub fn pieces(&self, mask: EdgeMask) -> Vec<BTreeSet<(u32, u32)>> {
        let h = self.height();
        let id = |i: u32, j: u32| ((j - 1) * 2 + (i - 1)) as usize;
        let mut parent: Vec<usize> = (0..(2 * h) as usize).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for j in 1..=h {
            if !self.contains(mask, Edge::V { x: 1, y: j - 1 }) {
                union(&mut parent, id(1, j), id(2, j));
            }
            if j < h {
                for i in 1..=2 {
                    if !self.contains(mask, Edge::H { x: i - 1, y: j }) {
                        union(&mut parent, id(i, j), id(i, j + 1));
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<(u32, u32)>> = BTreeMap::new();
        for j in 1..=h {
            for i in 1..=2 {
                let r = find(&mut parent, id(i, j));
                groups.entry(r).or_default().insert((i, j));
            }
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort();
        out
    }

    fn piece_boundary(&self, piece: &BTreeSet<(u32, u32)>) -> Vec<Edge> {
        // Edges bounding exactly one box of the piece.
        let mut count: BTreeMap<Edge, u32> = BTreeMap::new();
        for &(i, j) in piece {
            for e in self.box_boundary(i, j) {
                *count.entry(e).or_default() += 1;
            }
        }
        count.into_iter().filter(|(_, c)| *c == 1).map(|(e, _)| e).collect()
    }

    pub fn classify(&self, mask: EdgeMask) -> FaceClass {
        let mut n1 = 0;
        let mut n2 = 0;
        let mut lagrangian = true;
        let mut blocks = Vec::new();
        for piece in self.pieces(mask) {
            let bounded = self.piece_boundary(&piece).into_iter().all(|e| self.contains(mask, e));
            let kind = block_kind(&piece);
            match (kind, bounded) {
                (Some(Block::U1 { col, row }), true) => {
                    n1 += 1;
                    blocks.push(Block::U1 { col, row });
                }
                (Some(Block::U2 { row }), true) => {
                    n2 += 1;
                    blocks.push(Block::U2 { row });
                }
                _ => lagrangian = false,
            }
        }
        let diffeo_type = if lagrangian { diffeo_type(n1, n2) } else { "not Lagrangian".to_string() };
        FaceClass { lagrangian, n1, n2, diffeo_type, dimension: self.dimension(mask), blocks }
    }

    /// The Lagrangian diagram whose U(2) blocks sit on the rows of each pair.
    pub fn lagrangian_diagram(&self, pairs: &[(u32, u32)]) -> Result<EdgeMask, GcError> {
        let mut mask = self.full();
        for &(i, k) in pairs {
            if k != i + 1 || i < 1 || k > self.height() {
                return Err(GcError::BadPair(i, k));
            }
            mask &= !self.bit(Edge::V { x: 1, y: i - 1 });
            mask &= !self.bit(Edge::V { x: 1, y: i });
            mask &= !self.bit(Edge::H { x: 0, y: i });
            mask &= !self.bit(Edge::H { x: 1, y: i });
        }
        Ok(mask)
    }

    /// Monotone position inside a Lagrangian face: `u[i][j]` indexed from 1.
    pub fn monotone_point(&self, mask: EdgeMask) -> Result<BTreeMap<(u32, u32), i64>, GcError> {
        let class = self.classify(mask);
        if !class.lagrangian {
            return Err(GcError::NotLagrangian);
        }
        let mut u = BTreeMap::new();
        for b in &class.blocks {
            match *b {
                Block::U1 { col, row } => {
                    u.insert((col, row), row as i64 - col as i64);
                }
                Block::U2 { row } => {
                    for (c, r) in [(1, row), (2, row), (1, row + 1), (2, row + 1)] {
                        u.insert((c, r), row as i64 - 1);
                    }
                }
            }
        }
        Ok(u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    /// Single box `(col, row)`.
    U1 { col: u32, row: u32 },
    /// 2 x 2 block over rows `row`, `row + 1`.
    U2 { row: u32 },
}

fn block_kind(piece: &BTreeSet<(u32, u32)>) -> Option<Block> {
    let v: Vec<_> = piece.iter().copied().collect();
    match v.as_slice() {
        [(i, j)] => Some(Block::U1 { col: *i, row: *j }),
        [_, _, _, _] => {
            let j = v.iter().map(|b| b.1).min()?;
            let want: BTreeSet<_> = [(1, j), (2, j), (1, j + 1), (2, j + 1)].into_iter().collect();
            (*piece == want).then_some(Block::U2 { row: j })
        }
        _ => None,
    }
}

fn diffeo_type(n1: u32, n2: u32) -> String {
    let mut parts = Vec::new();
    match n2 {
        0 => {}
        1 => parts.push("S^3".to_string()),
        k => parts.push(format!("(S^3)^{k}")),
    }
    match n1 + n2 {
        0 => {}
        1 => parts.push("S^1".to_string()),
        k => parts.push(format!("T^{k}")),
    }
    if parts.is_empty() {
        "point".to_string()
    } else {
        parts.join(" x ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClass {
    pub lagrangian: bool,
    pub n1: u32,
    pub n2: u32,
    pub diffeo_type: String,
    pub dimension: u32,
    pub blocks: Vec<Block>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u32, k: u32) -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    // Independent count: lattice paths by dynamic programming on the grid.
    fn grid_paths(w: usize, h: usize) -> usize {
        let mut dp = vec![vec![0usize; h + 1]; w + 1];
        for x in 0..=w {
            for y in 0..=h {
                dp[x][y] = if x == 0 || y == 0 { 1 } else { dp[x - 1][y] + dp[x][y - 1] };
            }
        }
        dp[w][h]
    }

    #[test]
    fn edge_indexing_round_trips() {
        let l = Ladder::new(6).unwrap();
        for i in 0..l.edge_count() {
            assert_eq!(l.index(l.edge(i)), i);
        }
        assert_eq!(l.edge_count(), 22);
    }

    #[test]
    fn path_counts() {
        for n in 4..=8 {
            let l = Ladder::new(n).unwrap();
            let paths = l.positive_paths();
            assert_eq!(paths.len(), grid_paths(2, (n - 2) as usize));
            assert_eq!(paths.len(), binom(n, 2));
            assert!(paths.iter().all(|p| l.dimension(*p) == 0));
            assert!(paths.iter().all(|p| p.count_ones() == n));
        }
    }

    #[test]
    fn gr24_diagrams() {
        let l = Ladder::new(4).unwrap();
        let ds = l.admissible_diagrams();
        assert!(ds.contains(&l.full()));
        assert_eq!(l.dimension(l.full()), 4);
        assert_eq!(ds.iter().filter(|d| l.dimension(**d) == 3).count(), 6);
        assert!(ds.iter().all(|d| l.is_admissible(*d)));
    }

    #[test]
    fn gr24_classification() {
        let l = Ladder::new(4).unwrap();
        let h = l.classify(l.full());
        assert!(h.lagrangian);
        assert_eq!((h.n1, h.n2, h.diffeo_type.as_str()), (4, 0, "T^4"));
        let g = l.classify(l.lagrangian_diagram(&[(1, 2)]).unwrap());
        assert!(g.lagrangian);
        assert_eq!((g.n1, g.n2, g.diffeo_type.as_str()), (0, 1, "S^3 x S^1"));
        assert_eq!(g.dimension, 1);
        // The facet u_{1,2} = 2 drops the top-left corner.
        let f1 = l.full() & !l.bit(Edge::H { x: 0, y: 2 }) & !l.bit(Edge::V { x: 0, y: 1 });
        assert!(l.is_admissible(f1));
        let c = l.classify(f1);
        assert!(!c.lagrangian);
        assert_eq!(c.dimension, 3);
    }

    #[test]
    fn monotone_points_for_gr24() {
        let l = Ladder::new(4).unwrap();
        let h = l.monotone_point(l.full()).unwrap();
        let want: BTreeMap<_, _> = [((1, 1), 0), ((1, 2), 1), ((2, 1), -1), ((2, 2), 0)].into_iter().collect();
        assert_eq!(h, want);
        let g = l.monotone_point(l.lagrangian_diagram(&[(1, 2)]).unwrap()).unwrap();
        assert!(g.values().all(|v| *v == 0));
        let f1 = l.full() & !l.bit(Edge::H { x: 0, y: 2 }) & !l.bit(Edge::V { x: 0, y: 1 });
        assert_eq!(l.monotone_point(f1), Err(GcError::NotLagrangian));
    }
}
