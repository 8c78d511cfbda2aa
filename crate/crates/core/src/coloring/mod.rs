//! Distance colouring: exact chromatic numbers of power graphs, closed forms
//! for paths and cycles, and the excess-based completion machinery used to
//! save a colour below the degree bound.

mod closed_form;
mod exact;
mod partial;
mod strategy;

pub use closed_form::{chi_gamma_cycle, chi_gamma_path};
pub use exact::{
    chromatic_number_exact, dsatur_coloring, k_colorable, ExactOptions, SolveError,
    CAP_ENV_VAR, DEFAULT_EXACT_CAP,
};
pub use partial::{
    complete_partial_coloring, completion_hypotheses_hold, greedy_coloring, order_by_distance_from_edge, CompletionError,
    CompletionFailure, CompletionResult, OrderError, PartialColoring,
};
pub use strategy::{
    applicable_hypotheses, save_color_strategy, Hypothesis, SeedPlan, StrategyError,
    StrategyOutcome, StrategyRun,
};

use crate::graph::Graph;
use crate::metrics::{is_connected, power_graph};
use serde::{Serialize, Serializer};

/// A proper colouring using colours `0..k`, each at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    k: usize,
}

impl Coloring {
    /// Renumbers colours by first occurrence so that exactly `0..k` appear.
    pub fn from_assignment(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignment: Vec<usize> = raw
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring {
            k: map.len(),
            assignment,
        }
    }

    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn is_proper_on(&self, g: &Graph) -> bool {
        is_proper(g, &self.assignment)
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.assignment.serialize(s)
    }
}

/// Every edge joins different colours and every vertex is coloured.
pub fn is_proper(g: &Graph, assignment: &[usize]) -> bool {
    assignment.len() == g.order()
        && g.edges().iter().all(|&(u, v)| assignment[u] != assignment[v])
}

/// `chi_gamma(G) = chi(G^gamma)` with a witness colouring of `G^gamma`.
pub fn chi_gamma(
    g: &Graph,
    gamma: usize,
    opts: &ExactOptions,
) -> Result<(usize, Coloring), SolveError> {
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    if g.order() > opts.max_vertices {
        return Err(SolveError::CapExceeded {
            n: g.order(),
            cap: opts.max_vertices,
        });
    }
    let pg = power_graph(g, gamma).map_err(|_| SolveError::InvalidGamma(gamma))?;
    chromatic_number_exact(pg.graph(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn renumbering_uses_every_colour() {
        let c = Coloring::from_assignment(&[5, 2, 5, 9]);
        assert_eq!(c.assignment(), &[0, 1, 0, 2]);
        assert_eq!(c.num_colors(), 3);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[0,1,0,2]");
    }

    #[test]
    fn chi_gamma_examples() {
        let opts = ExactOptions::default();
        assert_eq!(chi_gamma(&path(5), 3, &opts).unwrap().0, 4);
        assert_eq!(chi_gamma(&cycle(6), 2, &opts).unwrap().0, 3);
        assert_eq!(chi_gamma(&star(6), 2, &opts).unwrap().0, 6);
        let (k, w) = chi_gamma(&petersen(), 2, &opts).unwrap();
        assert_eq!(k, 10);
        assert!(w.is_proper_on(power_graph(&petersen(), 2).unwrap().graph()));
    }

    #[test]
    fn chi_gamma_rejects_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            chi_gamma(&g, 2, &ExactOptions::default()),
            Err(SolveError::Disconnected)
        );
    }
}
