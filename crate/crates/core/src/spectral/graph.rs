use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// An undirected edge with vertices stored 0-based and `i < j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// A graph on vertices `0..n` with strictly positive edge weights.
///
/// Connectivity is not part of the type; design computations check it
/// separately.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from 0-based `(i, j, w)` triples. Edges are stored with
    /// `i < j` and sorted.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has a vertex outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self loop at vertex {}", a + 1)));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {w}",
                    a + 1,
                    b + 1
                )));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", i + 1, j + 1)));
            }
            out.push(Edge { i, j, w });
        }
        out.sort_by_key(|e| (e.i, e.j));
        Ok(Self { n, edges: out })
    }

    /// Graph whose edges are the off-diagonal entries of `adjacency` above
    /// `drop_tol`; entries with magnitude at most `drop_tol` are treated as
    /// absent.
    pub fn from_adjacency(adjacency: &DMatrix<f64>, drop_tol: f64) -> Result<Self> {
        let n = adjacency.nrows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = adjacency[(i, j)];
                if w > drop_tol {
                    edges.push((i, j, w));
                } else if w < -drop_tol {
                    return Err(Error::InvalidGraph(format!(
                        "negative adjacency entry {w:e} at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .binary_search_by(|e| (e.i, e.j).cmp(&(i, j)))
            .ok()
            .map(|k| self.edges[k].w)
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }
}
