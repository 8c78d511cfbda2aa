use super::Coloring;
use crate::clique::maximum_clique;
use crate::graph::Graph;
use std::time::{Duration, Instant};
use thiserror::Error;

pub const DEFAULT_EXACT_CAP: usize = 64;
/// Environment variable overriding [`ExactOptions::max_vertices`].
pub const CAP_ENV_VAR: &str = "DISTCHROMA_CAP_N";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOptions {
    pub max_vertices: usize,
    pub clique_cap: usize,
    /// Search nodes per decision run; `None` is unbounded.
    pub node_budget: Option<u64>,
    pub timeout: Option<Duration>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_vertices: DEFAULT_EXACT_CAP,
            clique_cap: crate::clique::DEFAULT_CLIQUE_CAP,
            node_budget: None,
            timeout: None,
        }
    }
}

impl ExactOptions {
    /// Defaults, with the vertex cap taken from `DISTCHROMA_CAP_N` when set.
    pub fn from_env() -> Self {
        let mut opts = Self::default();
        if let Some(cap) = std::env::var(CAP_ENV_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            opts.max_vertices = cap;
        }
        opts
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph of order {n} exceeds the exact solver cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("timed out after {elapsed_ms} ms with {lower} <= chi <= {upper}")]
    Timeout {
        elapsed_ms: u128,
        lower: usize,
        upper: usize,
    },
    #[error("node budget of {budget} exhausted with {lower} <= chi <= {upper}")]
    BudgetExhausted { budget: u64, lower: usize, upper: usize },
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("power exponent must be at least 1, got {0}")]
    InvalidGamma(usize),
}

enum Abort {
    Timeout,
    Budget,
}

/// DSATUR greedy colouring: repeatedly colour the vertex with the most
/// distinct neighbour colours (ties: larger degree, then smaller index)
/// with its least free colour.
pub fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.order();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        color[v] = c;
        for w in g.neighbors(v) {
            let s = &mut seen[w];
            if s.len() <= c {
                s.resize(c + 1, false);
            }
            if !s[c] {
                s[c] = true;
                saturation[w] += 1;
            }
        }
    }
    Coloring::from_assignment(&color)
}

struct Decision<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// `counts[v * k + c]`: coloured neighbours of `v` with colour `c`.
    counts: Vec<u32>,
    saturation: Vec<usize>,
    uncolored: usize,
    nodes: u64,
    budget: Option<u64>,
    deadline: Option<Instant>,
}

impl<'a> Decision<'a> {
    fn new(g: &'a Graph, k: usize, opts: &ExactOptions, start: Instant) -> Self {
        let n = g.order();
        Decision {
            g,
            k,
            color: vec![usize::MAX; n],
            counts: vec![0; n * k],
            saturation: vec![0; n],
            uncolored: n,
            nodes: 0,
            budget: opts.node_budget,
            deadline: opts.timeout.map(|t| start + t),
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.uncolored -= 1;
        for w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        self.uncolored += 1;
        for w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn select(&self) -> usize {
        let n = self.g.order();
        let mut best = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if self.color[v] != usize::MAX {
                continue;
            }
            let free_degree = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&w| self.color[w] == usize::MAX)
                .count();
            let k = (self.saturation[v], free_degree);
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    /// Colours up to `next_fresh` are tried; higher unused colours are
    /// interchangeable with it.
    fn search(&mut self, next_fresh: usize) -> Result<bool, Abort> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Abort::Budget);
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Abort::Timeout);
                }
            }
        }
        let v = self.select();
        if self.saturation[v] >= self.k {
            return Ok(false);
        }
        let limit = next_fresh.min(self.k - 1);
        for c in 0..=limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            let fresh = if c == next_fresh { next_fresh + 1 } else { next_fresh };
            if self.search(fresh)? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

fn decide(
    g: &Graph,
    k: usize,
    clique: &[usize],
    opts: &ExactOptions,
    start: Instant,
) -> Result<Option<Vec<usize>>, Abort> {
    if k == 0 {
        return Ok((g.order() == 0).then(Vec::new));
    }
    if clique.len() > k {
        return Ok(None);
    }
    let mut d = Decision::new(g, k, opts, start);
    for (c, &v) in clique.iter().enumerate() {
        d.assign(v, c);
    }
    let fresh = clique.len();
    if d.search(fresh)? {
        Ok(Some(d.color))
    } else {
        Ok(None)
    }
}

/// Searches for a proper colouring with at most `k` colours.
pub fn k_colorable(g: &Graph, k: usize, opts: &ExactOptions) -> Result<Option<Coloring>, SolveError> {
    let n = g.order();
    if n > opts.max_vertices {
        return Err(SolveError::CapExceeded { n, cap: opts.max_vertices });
    }
    let start = Instant::now();
    let clique = clique_seed(g, opts);
    match decide(g, k, &clique, opts, start) {
        Ok(found) => Ok(found.map(|a| Coloring::from_assignment(&a))),
        Err(abort) => Err(abort_error(abort, opts, start, clique.len(), n)),
    }
}

fn clique_seed(g: &Graph, opts: &ExactOptions) -> Vec<usize> {
    maximum_clique(g, opts.clique_cap).unwrap_or_else(|_| greedy_clique(g))
}

fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

fn abort_error(abort: Abort, opts: &ExactOptions, start: Instant, lower: usize, upper: usize) -> SolveError {
    match abort {
        Abort::Timeout => SolveError::Timeout {
            elapsed_ms: start.elapsed().as_millis(),
            lower,
            upper,
        },
        Abort::Budget => SolveError::BudgetExhausted {
            budget: opts.node_budget.unwrap_or(0),
            lower,
            upper,
        },
    }
}

/// Exact chromatic number with a witness.
///
/// The clique number is a lower bound and its clique is precoloured; DSATUR
/// gives the upper bound. Each `k` in between is decided by backtracking
/// with saturation-ordered branching, so the returned `k` is certified by
/// either a clique of size `k` or an exhausted search at `k - 1`.
pub fn chromatic_number_exact(g: &Graph, opts: &ExactOptions) -> Result<(usize, Coloring), SolveError> {
    let n = g.order();
    if n > opts.max_vertices {
        return Err(SolveError::CapExceeded { n, cap: opts.max_vertices });
    }
    if n == 0 {
        return Ok((0, Coloring::from_assignment(&[])));
    }
    let start = Instant::now();
    let clique = clique_seed(g, opts);
    let upper = dsatur_coloring(g);
    let mut lower = clique.len();
    while lower < upper.num_colors() {
        match decide(g, lower, &clique, opts, start) {
            Ok(Some(a)) => {
                let c = Coloring::from_assignment(&a);
                debug_assert!(c.is_proper_on(g));
                return Ok((c.num_colors(), c));
            }
            Ok(None) => lower += 1,
            Err(abort) => return Err(abort_error(abort, opts, start, lower, upper.num_colors())),
        }
    }
    Ok((upper.num_colors(), upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::metrics::power_graph;

    #[test]
    fn complete_and_moore_powers() {
        let opts = ExactOptions::default();
        assert_eq!(chromatic_number_exact(&complete(10), &opts).unwrap().0, 10);
        let pet2 = power_graph(&petersen(), 2).unwrap().into_graph();
        assert_eq!(chromatic_number_exact(&pet2, &opts).unwrap().0, 10);
        let c7sq = power_graph(&cycle(7), 2).unwrap().into_graph();
        let (k, w) = chromatic_number_exact(&c7sq, &opts).unwrap();
        assert_eq!(k, 4);
        assert!(w.is_proper_on(&c7sq));
    }

    #[test]
    fn petersen_itself_needs_three() {
        let (k, w) = chromatic_number_exact(&petersen(), &ExactOptions::default()).unwrap();
        assert_eq!(k, 3);
        assert!(w.is_proper_on(&petersen()));
    }

    #[test]
    fn empty_and_edgeless() {
        let opts = ExactOptions::default();
        assert_eq!(chromatic_number_exact(&Graph::empty(0), &opts).unwrap().0, 0);
        assert_eq!(chromatic_number_exact(&Graph::empty(4), &opts).unwrap().0, 1);
    }

    #[test]
    fn cap_and_budget_errors() {
        let opts = ExactOptions {
            max_vertices: 5,
            ..ExactOptions::default()
        };
        assert_eq!(
            chromatic_number_exact(&complete(6), &opts),
            Err(SolveError::CapExceeded { n: 6, cap: 5 })
        );
        // Grotzsch graph: triangle-free, chromatic number 4
        let grotzsch = Graph::from_edges(
            11,
            [
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
                (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
            ],
        )
        .unwrap();
        let (k, _) = chromatic_number_exact(&grotzsch, &ExactOptions::default()).unwrap();
        assert_eq!(k, 4);
        let tight = ExactOptions {
            node_budget: Some(1),
            ..ExactOptions::default()
        };
        assert!(matches!(
            chromatic_number_exact(&grotzsch, &tight),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn decision_respects_k() {
        let opts = ExactOptions::default();
        let c5 = cycle(5);
        assert!(k_colorable(&c5, 2, &opts).unwrap().is_none());
        let w = k_colorable(&c5, 3, &opts).unwrap().unwrap();
        assert!(w.is_proper_on(&c5) && w.num_colors() <= 3);
    }

    #[test]
    fn dsatur_is_proper() {
        for g in [petersen(), hoffman_singleton(), torus(5, 6), random_regular(30, 5, 9).unwrap()] {
            assert!(dsatur_coloring(&g).is_proper_on(&g));
        }
    }
}
