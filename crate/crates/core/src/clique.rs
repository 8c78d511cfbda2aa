//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use crate::bitset::BitSet;
use crate::graph::Graph;
use thiserror::Error;

/// Default order cap for exact clique search.
pub const DEFAULT_CLIQUE_CAP: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("graph of order {n} exceeds the exact clique cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid input graph")]
    InvalidInput,
}

pub fn clique_number(g: &Graph, cap: usize) -> Result<usize, CliqueError> {
    Ok(maximum_clique(g, cap)?.len())
}

/// A maximum clique, vertices ascending.
pub fn maximum_clique(g: &Graph, cap: usize) -> Result<Vec<usize>, CliqueError> {
    let n = g.order();
    if n > cap {
        return Err(CliqueError::CapExceeded { n, cap });
    }
    let mut search = Search {
        adj: g.adjacency(),
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(BitSet::full(n));
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// Greedy sequential coloring of `candidates`; returns vertices in
    /// color order with their color numbers (1-based), ascending colors.
    fn color_sort(&self, candidates: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(candidates.len());
        let mut uncolored = candidates.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.difference_with(&self.adj[v]);
                uncolored.remove(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, candidates: BitSet) {
        let order = self.color_sort(&candidates);
        let mut candidates = candidates;
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}
