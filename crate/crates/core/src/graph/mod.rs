//! Simple undirected graphs with oriented edge labels.
//!
//! Edges are stored once, keyed by the unordered pair and sorted
//! lexicographically by `(min, max)`. Each edge also remembers an orientation
//! `(tail, head)`, which only matters for interpreting polarization measurements;
//! degree, components and Laplacians ignore it.

mod generate;
mod io;
mod spectrum;

pub use generate::{gen_erdos_renyi, gen_random_regular};
pub use io::{read_edge_list, write_edge_list};
pub use spectrum::{
    connectivity_threshold, normalized_laplacian, pruning_gap_bound, spectral_summary,
    SpectralSummary, GAP_TOL,
};

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }

    /// The unordered key `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        if self.tail < self.head {
            (self.tail, self.head)
        } else {
            (self.head, self.tail)
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // per vertex: (neighbor, edge index), sorted by neighbor
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    /// Builds a graph from oriented edges, rejecting loops, duplicates (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut by_key: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
        for e in edges {
            if e.tail >= n || e.head >= n {
                return Err(Error::Index(format!("edge ({}, {}) with n_vertices = {n}", e.tail, e.head)));
            }
            if e.tail == e.head {
                return Err(Error::param(format!("self-loop at vertex {}", e.tail)));
            }
            if by_key.insert(e.key(), e).is_some() {
                let (a, b) = e.key();
                return Err(Error::param(format!("duplicate edge {{{a}, {b}}}")));
            }
        }
        let edges: Vec<Edge> = by_key.into_values().collect();
        let mut adjacency = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            adjacency[e.tail].push((e.head, idx));
            adjacency[e.head].push((e.tail, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { n, edges, adjacency })
    }

    /// Edges given as unordered pairs, oriented from smaller to larger index.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, pairs.iter().map(|&(a, b)| Edge::new(a.min(b), a.max(b))))
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_pairs(n, &pairs).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_pairs(n, &pairs).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("path is simple")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// `(neighbor, edge index)` pairs incident to `v`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.find_edge(a, b).is_some()
    }

    /// Index of the edge joining `a` and `b`, in either orientation.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        let list = self.adjacency.get(a)?;
        list.binary_search_by(|&(nb, _)| nb.cmp(&b)).ok().map(|k| list[k].1)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency.iter().any(Vec::is_empty)
    }

    /// Connected components ordered by smallest member; each sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &(w, _) in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().len() == 1
    }

    /// Largest component; among equal sizes the one with the smallest member.
    pub fn largest_component(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for comp in self.connected_components() {
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn cut_size(&self, in_set: &[bool]) -> usize {
        self.edges.iter().filter(|e| in_set[e.tail] != in_set[e.head]).count()
    }

    pub fn volume(&self, vertices: impl IntoIterator<Item = usize>) -> usize {
        vertices.into_iter().map(|v| self.degree(v)).sum()
    }

    /// Induced subgraph on `keep` (any order, duplicates ignored). Local
    /// vertex `k` is the `k`-th smallest kept vertex; orientations carry over.
    pub fn induced(&self, keep: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        let mut vertices: Vec<usize> = keep.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        for (k, &v) in vertices.iter().enumerate() {
            local[v] = k;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            let (t, h) = (local[e.tail], local[e.head]);
            if t != usize::MAX && h != usize::MAX {
                edges.push(Edge::new(t, h));
                edge_map.push(idx);
            }
        }
        // Local relabelling is monotone, so lexicographic order is preserved
        // and from_edges keeps edge_map aligned.
        let graph = Graph::from_edges(vertices.len(), edges).expect("induced subgraph is simple");
        Subgraph { graph, vertex_map: vertices, edge_map }
    }
}

/// A graph together with the indices its vertices and edges had in a parent
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    pub fn identity(g: &Graph) -> Self {
        Self {
            graph: g.clone(),
            vertex_map: (0..g.n_vertices()).collect(),
            edge_map: (0..g.n_edges()).collect(),
        }
    }

    /// Restricts to the local vertices `keep`, keeping maps relative to the
    /// original parent.
    pub fn restrict(&self, keep: &[usize]) -> Subgraph {
        let inner = self.graph.induced(keep);
        Subgraph {
            vertex_map: inner.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: inner.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
            graph: inner.graph,
        }
    }

    /// Composes `self` (relative to some parent) with `child` (relative to
    /// `self`).
    pub fn then(&self, child: &Subgraph) -> Subgraph {
        Subgraph {
            graph: child.graph.clone(),
            vertex_map: child.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: child.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }
}
