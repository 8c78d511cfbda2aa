//! Palette-limited partial colourings with excess bookkeeping, greedy
//! completion, and the distance-from-an-edge vertex ordering.

use super::Coloring;
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::metrics::{bfs_raw, PowerGraph};
use serde::Serialize;
use std::hash::{Hash, Hasher};
use thiserror::Error;

/// Partial proper colouring of a target graph using colours `0..palette`.
///
/// Tracks, for every vertex, how many coloured target-neighbours carry each
/// colour, the number of free colours, and the number of uncoloured
/// target-neighbours.
#[derive(Debug, Clone)]
pub struct PartialColoring<'g> {
    target: &'g Graph,
    palette: usize,
    assignment: Vec<Option<usize>>,
    /// `counts[v * palette + c]`
    counts: Vec<u32>,
    available: Vec<usize>,
    uncolored_neighbors: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("vertex {0} is already coloured")]
    AlreadyColored(usize),
    #[error("colour {color} is outside the palette of size {palette}")]
    ColorOutOfPalette { color: usize, palette: usize },
    #[error("colour {color} at vertex {vertex} conflicts with a coloured neighbour")]
    Conflict { vertex: usize, color: usize },
    #[error("vertices {0} and {1} must be adjacent in the target")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} must be uncoloured")]
    NotUncolored(usize),
    #[error("order must list every uncoloured vertex exactly once, ending with u then v")]
    BadOrder,
}

impl<'g> PartialColoring<'g> {
    pub fn new(target: &'g Graph, palette: usize) -> Self {
        let n = target.order();
        PartialColoring {
            target,
            palette,
            assignment: vec![None; n],
            counts: vec![0; n * palette],
            available: vec![palette; n],
            uncolored_neighbors: (0..n).map(|v| target.degree(v)).collect(),
        }
    }

    pub fn target(&self) -> &'g Graph {
        self.target
    }

    pub fn palette_size(&self) -> usize {
        self.palette
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn is_color_available(&self, v: usize, c: usize) -> bool {
        c < self.palette && self.counts[v * self.palette + c] == 0
    }

    /// Colours not used by any coloured target-neighbour of `v`.
    pub fn available(&self, v: usize) -> BitSet {
        BitSet::from_indices(
            self.palette,
            (0..self.palette).filter(|&c| self.is_color_available(v, c)),
        )
    }

    pub fn available_count(&self, v: usize) -> usize {
        self.available[v]
    }

    pub fn uncolored_neighbors(&self, v: usize) -> usize {
        self.uncolored_neighbors[v]
    }

    /// `1 + |available(v)| - uncoloured_neighbours(v)`.
    pub fn excess(&self, v: usize) -> isize {
        1 + self.available[v] as isize - self.uncolored_neighbors[v] as isize
    }

    pub fn uncolored(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.assignment.len()).filter(|&v| self.assignment[v].is_none())
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn least_available(&self, v: usize) -> Option<usize> {
        (0..self.palette).find(|&c| self.is_color_available(v, c))
    }

    pub fn color(&mut self, v: usize, c: usize) -> Result<(), CompletionError> {
        if self.assignment[v].is_some() {
            return Err(CompletionError::AlreadyColored(v));
        }
        if c >= self.palette {
            return Err(CompletionError::ColorOutOfPalette {
                color: c,
                palette: self.palette,
            });
        }
        if self.counts[v * self.palette + c] != 0 {
            return Err(CompletionError::Conflict { vertex: v, color: c });
        }
        self.assignment[v] = Some(c);
        for w in self.target.neighbors(v) {
            let slot = &mut self.counts[w * self.palette + c];
            if *slot == 0 {
                self.available[w] -= 1;
            }
            *slot += 1;
            self.uncolored_neighbors[w] -= 1;
        }
        Ok(())
    }

    pub fn uncolor(&mut self, v: usize) -> Option<usize> {
        let c = self.assignment[v].take()?;
        for w in self.target.neighbors(v) {
            let slot = &mut self.counts[w * self.palette + c];
            *slot -= 1;
            if *slot == 0 {
                self.available[w] += 1;
            }
            self.uncolored_neighbors[w] += 1;
        }
        Some(c)
    }

    /// Recomputes the bookkeeping from the assignment alone and compares.
    pub fn bookkeeping_consistent(&self) -> bool {
        let fresh = {
            let mut p = PartialColoring::new(self.target, self.palette);
            for (v, c) in self.assignment.iter().enumerate() {
                if let Some(c) = c {
                    if p.color(v, *c).is_err() {
                        return false;
                    }
                }
            }
            p
        };
        fresh.counts == self.counts
            && fresh.available == self.available
            && fresh.uncolored_neighbors == self.uncolored_neighbors
    }

    /// Stable digest of the assignment, for reproducing failures.
    pub fn digest(&self) -> String {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.palette.hash(&mut h);
        self.assignment.hash(&mut h);
        format!("{:016x}", h.finish())
    }

    /// Completed colouring, if every vertex is coloured.
    pub fn to_coloring(&self) -> Option<Coloring> {
        let raw: Option<Vec<usize>> = self.assignment.iter().copied().collect();
        raw.map(|a| Coloring::from_assignment(&a))
    }
}

/// Colours vertices in `order` with their least free colour, leaving a
/// vertex uncoloured when the palette is exhausted there.
pub fn greedy_coloring<'g>(
    pg: &'g PowerGraph,
    order: &[usize],
    palette_size: usize,
) -> PartialColoring<'g> {
    greedy_on(pg.graph(), order, palette_size)
}

pub(crate) fn greedy_on<'g>(target: &'g Graph, order: &[usize], palette: usize) -> PartialColoring<'g> {
    let mut pc = PartialColoring::new(target, palette);
    for &v in order {
        if let Some(c) = pc.least_available(v) {
            pc.color(v, c).expect("least available colour is free");
        }
    }
    pc
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
}

/// Vertices by decreasing distance from the edge `uv` (the smaller of the
/// distances to `u` and `v`), ties by ascending index, with `u` and `v` as
/// the last two entries.
pub fn order_by_distance_from_edge(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>, OrderError> {
    if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
        return Err(OrderError::NotAdjacent(u, v));
    }
    let du = bfs_raw(g, u);
    let dv = bfs_raw(g, v);
    if du.contains(&usize::MAX) {
        return Err(OrderError::Disconnected);
    }
    let mut rest: Vec<usize> = (0..g.order()).filter(|&w| w != u && w != v).collect();
    rest.sort_by_key(|&w| (std::cmp::Reverse(du[w].min(dv[w])), w));
    rest.push(u);
    rest.push(v);
    Ok(rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionFailure {
    pub blocking_vertex: usize,
    pub state_digest: String,
    /// Colours at the moment of failure; `null` for uncoloured vertices.
    pub partial: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CompletionResult {
    Success { coloring: Coloring },
    Failure(CompletionFailure),
}

impl CompletionResult {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            CompletionResult::Success { coloring } => Some(coloring),
            CompletionResult::Failure(_) => None,
        }
    }
}

/// Whether the completion preconditions hold: `excess(u) >= 1`,
/// `excess(v) >= 2`, and every vertex of `order` other than the final two
/// has at least two target-neighbours later in `order`.
pub fn completion_hypotheses_hold(pc: &PartialColoring<'_>, order: &[usize], u: usize, v: usize) -> bool {
    if pc.excess(u) < 1 || pc.excess(v) < 2 {
        return false;
    }
    let n = pc.target().order();
    let mut later = BitSet::new(n);
    for (i, &w) in order.iter().enumerate().rev() {
        if i + 2 < order.len() && pc.target().neighbors(w).intersection_len(&later) < 2 {
            return false;
        }
        later.insert(w);
    }
    true
}

/// Greedy completion in `order`, where `order` lists every uncoloured vertex
/// and ends with `u` then `v`. If `v` is blocked after `u` takes its least
/// free colour, `u` is recoloured once with its next free colour and `v`
/// retried.
pub fn complete_partial_coloring(
    mut pc: PartialColoring<'_>,
    order: &[usize],
    u: usize,
    v: usize,
) -> Result<CompletionResult, CompletionError> {
    let target = pc.target();
    let n = target.order();
    if u >= n || v >= n || !target.has_edge(u, v) {
        return Err(CompletionError::NotAdjacent(u, v));
    }
    for w in [u, v] {
        if pc.color_of(w).is_some() {
            return Err(CompletionError::NotUncolored(w));
        }
    }
    let listed = BitSet::from_indices(n, order.iter().copied().filter(|&w| w < n));
    let uncolored = BitSet::from_indices(n, pc.uncolored());
    if order.len() < 2
        || listed.len() != order.len()
        || listed != uncolored
        || order[order.len() - 2] != u
        || order[order.len() - 1] != v
    {
        return Err(CompletionError::BadOrder);
    }

    let fail = |pc: &PartialColoring<'_>, w: usize| {
        Ok(CompletionResult::Failure(CompletionFailure {
            blocking_vertex: w,
            state_digest: pc.digest(),
            partial: pc.assignment().to_vec(),
        }))
    };

    for &w in &order[..order.len() - 2] {
        match pc.least_available(w) {
            Some(c) => pc.color(w, c).expect("free colour"),
            None => return fail(&pc, w),
        }
    }
    let Some(first) = pc.least_available(u) else {
        return fail(&pc, u);
    };
    pc.color(u, first).expect("free colour");
    if pc.least_available(v).is_none() {
        pc.uncolor(u);
        let retry = (first + 1..pc.palette_size()).find(|&c| pc.is_color_available(u, c));
        match retry {
            Some(c) => pc.color(u, c).expect("free colour"),
            None => {
                pc.color(u, first).expect("free colour");
                return fail(&pc, v);
            }
        }
    }
    match pc.least_available(v) {
        Some(c) => pc.color(v, c).expect("free colour"),
        None => return fail(&pc, v),
    }
    let coloring = pc.to_coloring().expect("all vertices coloured");
    debug_assert!(coloring.is_proper_on(target));
    Ok(CompletionResult::Success { coloring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::metrics::power_graph;

    #[test]
    fn greedy_with_delta_plus_one_colours_everything() {
        for g in [petersen(), torus(4, 5), star(7)] {
            let pg = power_graph(&g, 2).unwrap();
            let order: Vec<usize> = (0..g.order()).rev().collect();
            let pc = greedy_coloring(&pg, &order, pg.graph().max_degree() + 1);
            assert!(pc.is_complete());
            assert!(pc.to_coloring().unwrap().is_proper_on(pg.graph()));
        }
    }

    #[test]
    fn greedy_leaves_leftovers() {
        let k4 = power_graph(&complete(4), 1).unwrap();
        let pc = greedy_coloring(&k4, &[0, 1, 2, 3], 3);
        assert_eq!(pc.uncolored().count(), 1);
        let c5sq = power_graph(&cycle(5), 2).unwrap();
        let pc = greedy_coloring(&c5sq, &[0, 1, 2, 3, 4], 4);
        assert!(pc.uncolored().count() >= 1);
    }

    #[test]
    fn excess_tracks_updates() {
        let pg = power_graph(&petersen(), 2).unwrap();
        let mut pc = PartialColoring::new(pg.graph(), 8);
        // palette M-1 = 8 on an all-uncoloured K10: excess = 1 + 8 - 9 = 0
        assert!((0..10).all(|v| pc.excess(v) == 0));
        pc.color(0, 0).unwrap();
        pc.color(1, 1).unwrap();
        assert_eq!(pc.color(2, 1), Err(CompletionError::Conflict { vertex: 2, color: 1 }));
        assert_eq!(pc.available_count(5), 6);
        assert_eq!(pc.uncolored_neighbors(5), 7);
        assert!(pc.bookkeeping_consistent());
        pc.uncolor(0);
        assert_eq!(pc.available_count(5), 7);
        assert!(pc.bookkeeping_consistent());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_by_distance_from_edge(&path(4), 1, 2).unwrap(), vec![0, 3, 1, 2]);
        assert_eq!(
            order_by_distance_from_edge(&cycle(6), 0, 1).unwrap(),
            vec![3, 4, 2, 5, 0, 1]
        );
        assert_eq!(
            order_by_distance_from_edge(&star(5), 0, 1).unwrap(),
            vec![2, 3, 4, 0, 1]
        );
        assert_eq!(order_by_distance_from_edge(&path(4), 0, 2), Err(OrderError::NotAdjacent(0, 2)));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(order_by_distance_from_edge(&split, 0, 1), Err(OrderError::Disconnected));
    }

    #[test]
    fn completion_on_spider() {
        // spider S(1,1,2): centre 0, legs 0-1, 0-2, 0-3-4; Delta 3, M = 9
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let pg = power_graph(&g, 2).unwrap();
        let pc = PartialColoring::new(pg.graph(), 8);
        let order = order_by_distance_from_edge(&g, 3, 4).unwrap();
        assert!(completion_hypotheses_hold(&pc, &order, 3, 4));
        let out = complete_partial_coloring(pc, &order, 3, 4).unwrap();
        let c = out.coloring().expect("completes");
        assert!(c.is_proper_on(pg.graph()));
        assert!(c.num_colors() <= 8);
    }

    #[test]
    fn completion_trivial_when_only_u_v_remain() {
        let g = path(2);
        let pg = power_graph(&g, 1).unwrap();
        let pc = PartialColoring::new(pg.graph(), 3);
        let out = complete_partial_coloring(pc, &[0, 1], 0, 1).unwrap();
        assert!(out.coloring().is_some());
    }

    #[test]
    fn completion_failure_is_reported() {
        let k10 = complete(10);
        let pg = power_graph(&k10, 1).unwrap();
        let pc = PartialColoring::new(pg.graph(), 9);
        let order: Vec<usize> = (0..10).collect();
        assert!(!completion_hypotheses_hold(&pc, &order, 8, 9));
        match complete_partial_coloring(pc, &order, 8, 9).unwrap() {
            CompletionResult::Failure(f) => {
                assert_eq!(f.blocking_vertex, 9);
                assert_eq!(f.partial.iter().filter(|c| c.is_none()).count(), 1);
            }
            CompletionResult::Success { .. } => panic!("K10 cannot be 9-coloured"),
        }
    }

    #[test]
    fn completion_preconditions() {
        let g = path(3);
        let pg = power_graph(&g, 1).unwrap();
        let pc = PartialColoring::new(pg.graph(), 3);
        assert_eq!(
            complete_partial_coloring(pc.clone(), &[1, 0, 2], 0, 2),
            Err(CompletionError::NotAdjacent(0, 2))
        );
        assert_eq!(
            complete_partial_coloring(pc.clone(), &[0, 1], 0, 1),
            Err(CompletionError::BadOrder)
        );
        let mut colored = pc.clone();
        colored.color(2, 0).unwrap();
        assert_eq!(
            complete_partial_coloring(colored, &[1, 2], 1, 2),
            Err(CompletionError::NotUncolored(2))
        );
    }
}
