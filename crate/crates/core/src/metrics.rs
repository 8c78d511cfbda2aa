//! Structural invariants and power-graph construction.

use crate::bitset::BitSet;
use crate::clique::clique_number;
use crate::connectivity::vertex_connectivity;
use crate::graph::Graph;
use serde::{Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// A path length or cycle length that may be unbounded.
///
/// `Infinite` orders after every finite value. Serializes as an integer or
/// `null`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_none(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("power exponent must be at least 1, got {0}")]
    InvalidGamma(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// Breadth-first distances from `source`.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Distance> {
    bfs_raw(g, source)
        .into_iter()
        .map(|d| if d == usize::MAX { Distance::Infinite } else { Distance::Finite(d) })
        .collect()
}

/// BFS with `usize::MAX` for unreachable vertices.
pub(crate) fn bfs_raw(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// BFS truncated at depth `limit`.
pub(crate) fn ball(g: &Graph, source: usize, limit: usize) -> BitSet {
    let mut seen = BitSet::new(g.order());
    let mut frontier = vec![source];
    seen.insert(source);
    for _ in 0..limit {
        let mut next = Vec::new();
        for v in frontier {
            for w in g.neighbors(v) {
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

pub fn is_connected(g: &Graph) -> bool {
    g.order() <= 1 || bfs_raw(g, 0).iter().all(|&d| d != usize::MAX)
}

/// `G^gamma` together with its base graph.
#[derive(Debug, Clone)]
pub struct PowerGraph {
    pub base: Graph,
    pub gamma: usize,
    power: Graph,
}

impl PowerGraph {
    /// The power graph as a plain graph.
    pub fn graph(&self) -> &Graph {
        &self.power
    }

    pub fn power_adjacency(&self, v: usize) -> &BitSet {
        self.power.neighbors(v)
    }

    pub fn into_graph(self) -> Graph {
        self.power
    }
}

/// Joins every pair at base distance in `[1, gamma]`.
pub fn power_graph(g: &Graph, gamma: usize) -> Result<PowerGraph, MetricsError> {
    if gamma < 1 {
        return Err(MetricsError::InvalidGamma(gamma));
    }
    let adjacency = (0..g.order())
        .map(|v| {
            let mut b = ball(g, v, gamma);
            b.remove(v);
            b
        })
        .collect();
    Ok(PowerGraph {
        base: g.clone(),
        gamma,
        power: Graph::from_adjacency_unchecked(adjacency),
    })
}

/// Shortest cycle length, or `Infinite` for forests.
pub fn girth(g: &Graph) -> Distance {
    match shortest_cycle_through_root(g, None) {
        Some((len, _, _, _)) => Distance::Finite(len),
        None => Distance::Infinite,
    }
}

/// BFS from each root (or only `root`), scanning non-tree edges until no
/// shorter closed walk is possible. Returns `(length, root, x, y)` with `xy`
/// the closing edge of the shortest one.
fn shortest_cycle_through_root(
    g: &Graph,
    root: Option<usize>,
) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let mut best: Option<(usize, usize, usize, usize)> = None;
    let roots: Vec<usize> = match root {
        Some(r) => vec![r],
        None => (0..n).collect(),
    };
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for r in roots {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[r] = 0;
        parent[r] = usize::MAX;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            if let Some((len, ..)) = best {
                if 2 * dist[v] + 1 >= len {
                    break;
                }
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    if best.is_none_or(|(b, ..)| len < b) {
                        best = Some((len, r, v, w));
                    }
                }
            }
        }
    }
    best
}

/// Vertices of one shortest cycle in cyclic order, chosen deterministically
/// (smallest root index achieving the girth, first closing edge in BFS
/// order). `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let target = girth(g).finite()?;
    for r in 0..g.order() {
        let dist = bfs_raw(g, r);
        // parents by smallest index at previous level
        let parent = |v: usize| -> usize {
            g.neighbors(v)
                .iter()
                .find(|&w| dist[w] != usize::MAX && dist[w] + 1 == dist[v])
                .expect("non-root vertex has a BFS parent")
        };
        let path_to_root = |mut v: usize| {
            let mut p = vec![v];
            while v != r {
                v = parent(v);
                p.push(v);
            }
            p
        };
        for &(x, y) in g.edges() {
            if dist[x] == usize::MAX || dist[y] == usize::MAX {
                continue;
            }
            if dist[x] + dist[y] + 1 != target {
                continue;
            }
            let px = path_to_root(x);
            let py = path_to_root(y);
            let mut cycle: Vec<usize> = px.clone();
            cycle.pop();
            cycle.extend(py.iter().rev());
            // cycle = x .. r .. y ; closing edge y-x
            let distinct = BitSet::from_indices(g.order(), cycle.iter().copied()).len();
            if distinct == cycle.len() && cycle.len() == target {
                return Some(cycle);
            }
        }
    }
    None
}

/// Largest finite pairwise distance; `Infinite` when disconnected.
pub fn diameter(g: &Graph) -> Distance {
    let mut best = 0;
    for v in 0..g.order() {
        for d in bfs_raw(g, v) {
            if d == usize::MAX {
                return Distance::Infinite;
            }
            best = best.max(d);
        }
    }
    Distance::Finite(best)
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// `d2(v)`: sum of the degrees of the neighbors of `v`.
pub fn two_degree_profile(g: &Graph) -> Vec<usize> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().map(|u| g.degree(u)).sum())
        .collect()
}

pub fn is_two_degree_regular(g: &Graph) -> bool {
    let p = two_degree_profile(g);
    p.windows(2).all(|w| w[0] == w[1])
}

/// Flat summary of the structural invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub girth: Distance,
    pub diameter: Distance,
    pub connectivity: usize,
    pub is_connected: bool,
    pub is_regular: bool,
    pub is_bipartite: bool,
    pub two_degree_regular: bool,
}

impl InvariantReport {
    pub fn compute(g: &Graph) -> Self {
        let max_degree = g.max_degree();
        let min_degree = g.min_degree();
        InvariantReport {
            n: g.order(),
            m: g.size(),
            max_degree,
            min_degree,
            girth: girth(g),
            diameter: diameter(g),
            connectivity: vertex_connectivity(g),
            is_connected: is_connected(g),
            is_regular: min_degree == max_degree,
            is_bipartite: is_bipartite(g),
            two_degree_regular: is_two_degree_regular(g),
        }
    }
}

/// Clique number of `G^gamma`, exposed here for reports.
pub fn power_clique_number(
    g: &Graph,
    gamma: usize,
    cap: usize,
) -> Result<usize, crate::clique::CliqueError> {
    let pg = power_graph(g, gamma).map_err(|_| crate::clique::CliqueError::InvalidInput)?;
    clique_number(pg.graph(), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn path_distances() {
        let d = bfs_distances(&path(4), 0);
        assert_eq!(
            d,
            [0, 1, 2, 3].map(Distance::Finite).to_vec()
        );
    }

    #[test]
    fn disconnected_is_infinite() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&g, 0)[2], Distance::Infinite);
        assert_eq!(diameter(&g), Distance::Infinite);
        assert!(!is_connected(&g));
    }

    #[test]
    fn power_of_path() {
        let pg = power_graph(&path(4), 2).unwrap();
        let g = pg.graph();
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.size(), 5);
        assert_eq!(power_graph(&path(4), 0).unwrap_err(), MetricsError::InvalidGamma(0));
    }

    #[test]
    fn power_one_is_base() {
        let g = petersen();
        assert_eq!(power_graph(&g, 1).unwrap().graph(), &g);
    }

    #[test]
    fn complete_powers() {
        assert!(power_graph(&petersen(), 2).unwrap().graph().is_complete());
        assert!(power_graph(&cycle(7), 3).unwrap().graph().is_complete());
        assert!(!power_graph(&cycle(7), 2).unwrap().graph().is_complete());
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&petersen()), Distance::Finite(5));
        assert_eq!(girth(&complete(4)), Distance::Finite(3));
        assert_eq!(girth(&star(6)), Distance::Infinite);
        assert_eq!(girth(&path(7)), Distance::Infinite);
        assert_eq!(girth(&cycle(9)), Distance::Finite(9));
        assert_eq!(girth(&complete_bipartite(3, 3)), Distance::Finite(4));
        assert_eq!(girth(&hoffman_singleton()), Distance::Finite(5));
    }

    #[test]
    fn shortest_cycle_is_a_cycle() {
        for g in [petersen(), cycle(8), complete(5), torus(4, 5), hoffman_singleton()] {
            let c = shortest_cycle(&g).unwrap();
            assert_eq!(Distance::Finite(c.len()), girth(&g));
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
        assert!(shortest_cycle(&star(5)).is_none());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&hoffman_singleton()), Distance::Finite(2));
        assert_eq!(diameter(&star(5)), Distance::Finite(2));
        assert_eq!(diameter(&path(9)), Distance::Finite(8));
    }

    #[test]
    fn two_degree() {
        assert!(two_degree_profile(&petersen()).iter().all(|&x| x == 9));
        assert_eq!(two_degree_profile(&star(4)), vec![3, 3, 3, 3]);
        assert_eq!(two_degree_profile(&path(3)), vec![2, 2, 2]);
        assert!(is_two_degree_regular(&path(3)));
        assert!(!is_two_degree_regular(&path(4)));
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&cycle(6)));
        assert!(!is_bipartite(&cycle(7)));
        assert!(!is_bipartite(&petersen()));
    }

    #[test]
    fn report_serializes_infinite_as_null() {
        let r = InvariantReport::compute(&star(4));
        let v = serde_json::to_value(&r).unwrap();
        assert!(v["girth"].is_null());
        assert_eq!(v["diameter"], 2);
        assert_eq!(v["connectivity"], 1);
        assert_eq!(v["two_degree_regular"], true);
        assert_eq!(v["is_regular"], false);
    }
}
