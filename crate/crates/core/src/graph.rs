//! Simple undirected graphs with optional loops and projective-point labels.
//!
//! Adjacency rows are bitsets; loops live in a separate bit vector so that
//! neighbor iteration never yields the vertex itself. Degree and the
//! adjacency matrix count a loop once.

use serde::{Deserialize, Serialize};

use crate::projgeom::ProjPoint;

/// Which family a graph was built from. Recorded in exports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// The trace-one hyperplane subgraph `H(k, q)`.
    Paper,
    /// Induced subgraph on non-absolute points.
    Nonabsolute,
    /// The full polarity graph, loops included.
    Full,
    /// Anything else (test fixtures, imported files).
    Other,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Paper => "paper",
            Construction::Nonabsolute => "nonabsolute",
            Construction::Full => "full",
            Construction::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper" => Some(Construction::Paper),
            "nonabsolute" => Some(Construction::Nonabsolute),
            "full" => Some(Construction::Full),
            "other" => Some(Construction::Other),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    loops: Vec<bool>,
    labels: Vec<ProjPoint>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// Builds a graph from precomputed bitset rows (no diagonal bits).
    pub(crate) fn from_rows(
        n: usize,
        rows: Vec<u64>,
        loops: Vec<bool>,
        labels: Vec<ProjPoint>,
    ) -> Self {
        let words = words_for(n);
        debug_assert_eq!(rows.len(), n * words);
        debug_assert_eq!(loops.len(), n);
        debug_assert!(labels.is_empty() || labels.len() == n);
        let g = Graph {
            n,
            words,
            rows,
            loops,
            labels,
        };
        debug_assert!(g.is_symmetric());
        g
    }

    /// Builds a graph from an edge list; `u == v` entries are loops.
    /// Panics on out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], labels: Vec<ProjPoint>) -> Self {
        assert!(labels.is_empty() || labels.len() == n);
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        let mut loops = vec![false; n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                loops[u] = true;
            } else {
                rows[u * words + v / 64] |= 1 << (v % 64);
                rows[v * words + u / 64] |= 1 << (u % 64);
            }
        }
        Graph {
            n,
            words,
            rows,
            loops,
            labels,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges, Vec::new())
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, &[], Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[ProjPoint] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&ProjPoint> {
        self.labels.get(v)
    }

    /// Bitset row of `v` (loop excluded), `words_per_row()` words long.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Adjacency between distinct vertices.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| l.then_some(i))
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    /// Neighbors of `v` other than `v` itself, in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// Degree with a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum::<usize>()
            + self.loops[v] as usize
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(|v| self.degree(v))
    }

    /// Number of edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u <= v`, loops included, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            if self.loops[u] {
                out.push((u, u));
            }
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Subgraph induced on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let m = vertices.len();
        let words = words_for(m);
        let mut rows = vec![0u64; m * words];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.adjacent(u, v) {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let loops = vertices.iter().map(|&v| self.loops[v]).collect();
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            vertices.iter().map(|&v| self.labels[v].clone()).collect()
        };
        Graph::from_rows(m, rows, loops, labels)
    }

    /// Dense 0/1 adjacency matrix, row-major, loops on the diagonal.
    pub fn adjacency_matrix(&self) -> Vec<u8> {
        let mut a = vec![0u8; self.n * self.n];
        for u in 0..self.n {
            if self.loops[u] {
                a[u * self.n + u] = 1;
            }
            for v in self.neighbors(u) {
                a[u * self.n + v] = 1;
            }
        }
        a
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.neighbors(u).all(|v| self.adjacent(v, u)))
    }
}

/// Iterates the set bit positions of a bitset.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_loops_and_degrees() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 2), (3, 0)], Vec::new());
        assert!(g.is_symmetric());
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.loop_count(), 1);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.degree(0), 2);
        assert!(!g.adjacent(2, 2));
        assert_eq!(g.neighbors(2).collect::<Vec<_>>(), vec![1]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 2)]);
    }

    #[test]
    fn induced_keeps_order() {
        let g = Graph::complete(70);
        let sub = g.induced(&[69, 3, 64]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 3);
        let e = Graph::empty(5);
        assert_eq!(e.edge_count(), 0);
        assert!(e.degrees().all(|d| d == 0));
    }

    #[test]
    fn adjacency_matrix_has_loops_on_diagonal() {
        let g = Graph::from_edges(3, &[(0, 0), (1, 2)], Vec::new());
        assert_eq!(g.adjacency_matrix(), vec![1, 0, 0, 0, 0, 1, 0, 1, 0]);
    }
}
