//! Immutable simple undirected graphs on dense vertex indices.

use crate::bitset::BitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Simple undirected graph with vertices `0..n`.
///
/// Adjacency is stored both as per-vertex bit sets and as a sorted edge
/// list of pairs `(u, v)` with `u < v`. Both views describe the same edge
/// set and are fixed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BitSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![BitSet::new(n); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![BitSet::new(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Self::from_adjacency_unchecked(adjacency))
    }

    /// Builds from symmetric loop-free adjacency sets. Callers guarantee the
    /// invariants; debug builds verify them.
    pub(crate) fn from_adjacency_unchecked(adjacency: Vec<BitSet>) -> Self {
        let mut edges = Vec::new();
        for (u, nbrs) in adjacency.iter().enumerate() {
            for v in nbrs.iter().filter(|&v| v > u) {
                edges.push((u, v));
            }
        }
        let g = Graph { adjacency, edges };
        debug_assert!(g.validate().is_ok());
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[BitSet] {
        &self.adjacency
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size() == n * n.saturating_sub(1) / 2
    }

    /// One vertex adjacent to every other and no further edges.
    pub fn is_star(&self) -> bool {
        let n = self.order();
        n >= 2 && self.size() == n - 1 && (0..n).any(|v| self.degree(v) == n - 1)
    }

    /// Subgraph induced by `keep`; returns the subgraph and the map from new
    /// indices to original vertices (ascending).
    pub fn induced_subgraph(&self, keep: &BitSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().filter(|&v| v < self.order()).collect();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let adjacency = map
            .iter()
            .map(|&v| {
                BitSet::from_indices(
                    k,
                    self.adjacency[v]
                        .iter()
                        .filter(|&w| index[w] != usize::MAX)
                        .map(|w| index[w]),
                )
            })
            .collect();
        (Graph::from_adjacency_unchecked(adjacency), map)
    }

    /// Checks loop-freeness, symmetry, and edge-list agreement.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.order();
        let mut count = 0;
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            if nbrs.capacity() != n {
                return Err(format!("adjacency set of {v} has capacity {}", nbrs.capacity()));
            }
            if nbrs.contains(v) {
                return Err(format!("self-loop at {v}"));
            }
            for u in nbrs.iter() {
                if !self.adjacency[u].contains(v) {
                    return Err(format!("asymmetric adjacency {v}->{u}"));
                }
            }
            count += nbrs.len();
        }
        if count != 2 * self.edges.len() {
            return Err("edge list disagrees with adjacency".into());
        }
        for &(u, v) in &self.edges {
            if u >= v || !self.adjacency[u].contains(v) {
                return Err(format!("bad edge ({u},{v})"));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_dedups_and_validates() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, map) = g.induced_subgraph(&BitSet::from_indices(4, [1, 2, 3]));
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn star_detection() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_star());
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!path.is_star());
    }
}
