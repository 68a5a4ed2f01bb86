//! Hypergraph representation, validation, generators and the text format.
//!
//! Vertices are the indices `0..n`. Every edge is stored as a strictly sorted
//! list of distinct vertices, so two edges are equal as sets iff they are equal
//! as vectors.

mod generate;
mod text;

pub use generate::{gen_blowup, gen_frozen, gen_random_uniform, RandomGenReport};
pub use text::{parse_hypergraph, serialize_hypergraph};

use serde::Serialize;
use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    /// `incidence[v]` lists the indices of the edges containing `v`.
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting malformed edges and repeated edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let h = Self::with_repeats(n, edges)?;
        if let Some(dup) = h.first_duplicate_edge() {
            return Err(Error::DuplicateEdge(dup));
        }
        Ok(h)
    }

    /// Builds a hypergraph that may contain the same edge more than once.
    ///
    /// Malformed edges (fewer than two vertices, repeated vertices, indices out
    /// of range) are still rejected. Repeats are kept so that [`validate`] can
    /// flag them; the dynamics treat a repeated edge like a single one.
    ///
    /// [`validate`]: Hypergraph::validate
    pub fn with_repeats(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (idx, mut edge) in edges.into_iter().enumerate() {
            edge.sort_unstable();
            if edge.len() < 2 {
                return Err(Error::MalformedEdge {
                    edge: idx,
                    reason: format!("{} vertices, at least 2 required", edge.len()),
                });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedEdge {
                    edge: idx,
                    reason: "repeated vertex".into(),
                });
            }
            if let Some(&bad) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { index: bad, n });
            }
            normalized.push(edge);
        }
        let mut incidence = vec![Vec::new(); n];
        for (idx, edge) in normalized.iter().enumerate() {
            for &v in edge {
                incidence[v].push(idx);
            }
        }
        Ok(Self {
            n,
            edges: normalized,
            incidence,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Minimum edge size, `None` when there are no edges.
    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    pub fn max_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).max()
    }

    /// Vertices sharing an edge with `v`, excluding `v`, in increasing order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incidence[v]
            .iter()
            .flat_map(|&e| self.edges[e].iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_degree_vertices(&self) -> Vec<usize> {
        let delta = self.max_degree();
        (0..self.n).filter(|&v| self.degree(v) == delta).collect()
    }

    fn first_duplicate_edge(&self) -> Option<Vec<usize>> {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .find(|e| !seen.insert(e.as_slice()))
            .cloned()
    }

    /// Same hypergraph with edges in lexicographic order.
    pub fn canonical(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort();
        Self::with_repeats(self.n, edges).expect("edges already validated")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(
                other
                    .edges
                    .iter()
                    .map(|e| e.iter().map(|&v| v + shift).collect()),
            )
            .collect();
        Hypergraph::with_repeats(self.n + other.n, edges).expect("union of valid hypergraphs")
    }

    pub fn validate(&self) -> ValidationReport {
        let min_edge_size = self.min_edge_size();
        let max_edge_size = self.max_edge_size();
        ValidationReport {
            n: self.n,
            edge_count: self.edges.len(),
            min_edge_size,
            max_edge_size,
            max_degree: self.max_degree(),
            is_uniform: min_edge_size == max_edge_size,
            has_duplicate_edges: self.first_duplicate_edge().is_some(),
        }
    }
}

/// Summary statistics recomputed from a [`Hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub edge_count: usize,
    pub min_edge_size: Option<usize>,
    pub max_edge_size: Option<usize>,
    pub max_degree: usize,
    pub is_uniform: bool,
    pub has_duplicate_edges: bool,
}

/// A hypergraph whose edges all have exactly two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph(Hypergraph);

impl Graph {
    pub fn new(h: Hypergraph) -> Result<Self> {
        if let Some((edge, e)) = h.edges().iter().enumerate().find(|(_, e)| e.len() != 2) {
            return Err(Error::NotAGraph {
                edge,
                size: e.len(),
            });
        }
        Ok(Graph(h))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(Hypergraph::new(
            n,
            edges.iter().map(|&(u, v)| vec![u, v]).collect(),
        )?)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::param("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.0
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.0
    }
}

impl std::ops::Deref for Graph {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.0
    }
}
