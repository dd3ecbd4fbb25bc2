//! The hypergraph of a motif specification.

use alloc::vec::Vec;

use crate::spec::{BlockId, MotifSpec};

/// One edge per partition block. After [`Hypergraph::dedup`] an edge may
/// stand for several blocks with the same members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Zero-based vertices, ascending, never empty.
    pub vertices: Vec<usize>,
    /// `(column, block)` of every block this edge came from.
    pub origins: Vec<(usize, BlockId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, edges: Vec<Edge>) -> Self {
        for e in &edges {
            assert!(!e.vertices.is_empty(), "empty edge");
            assert!(
                e.vertices.iter().all(|&v| v < n_vertices),
                "vertex out of range"
            );
        }
        Hypergraph { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Merges edges with identical vertex sets, keeping first-seen order.
    pub fn dedup(&self) -> Hypergraph {
        let mut edges: Vec<Edge> = Vec::new();
        for e in &self.edges {
            match edges.iter_mut().find(|d| d.vertices == e.vertices) {
                Some(d) => d.origins.extend_from_slice(&e.origins),
                None => edges.push(e.clone()),
            }
        }
        Hypergraph {
            n_vertices: self.n_vertices,
            edges,
        }
    }

    /// Indices of the edges incident on each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = alloc::vec![Vec::new(); self.n_vertices];
        for (k, e) in self.edges.iter().enumerate() {
            for &v in &e.vertices {
                inc[v].push(k);
            }
        }
        inc
    }
}

/// Edge `k` of the result is block `BlockId(k)` of the specification.
pub fn build_hypergraph(spec: &MotifSpec) -> Hypergraph {
    let edges = spec
        .blocks()
        .map(|(id, m, members)| Edge {
            vertices: members.to_vec(),
            origins: alloc::vec![(m, id)],
        })
        .collect();
    Hypergraph::new(spec.tuple_len(), edges)
}
