//! Constructive attempts at colouring `G^gamma` with `M - 1` colours.
//!
//! Each applicable structural hypothesis yields seed plans: an edge `uv`,
//! a set of precoloured vertices that give `u` and `v` spare colours, and a
//! set of vertices removed before ordering. The remaining vertices are
//! ordered by decreasing distance from `uv` and coloured greedily.

use super::exact::{k_colorable, ExactOptions};
use super::partial::{
    complete_partial_coloring, completion_hypotheses_hold, order_by_distance_from_edge,
    CompletionResult, PartialColoring,
};
use super::Coloring;
use crate::bitset::BitSet;
use crate::bounds::moore_bound_m;
use crate::connectivity::vertex_connectivity;
use crate::graph::Graph;
use crate::metrics::{bfs_raw, girth, is_connected, power_graph, shortest_cycle, Distance};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `delta(G) < Delta(G)`.
    NonRegular,
    /// `girth <= 2 gamma - 1`.
    ShortGirth,
    /// `girth >= 2 gamma + 2` with `kappa >= 3` (`gamma >= 3`), or with
    /// `kappa >= 4` and `girth > 6` (`gamma = 2`).
    LongGirthConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedPlan {
    pub hypothesis: Hypothesis,
    /// Second-to-last vertex of the order.
    pub u: usize,
    /// Last vertex of the order.
    pub v: usize,
    /// `(vertex, colour)` pairs fixed before the greedy pass.
    pub precolored: Vec<(usize, usize)>,
    /// Vertices deleted before computing the distance order.
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyRun {
    pub plan: SeedPlan,
    pub order: Vec<usize>,
    /// Whether the completion preconditions held at the start.
    pub completion_preconditions_hold: bool,
    pub result: CompletionResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StrategyOutcome {
    NotApplicable,
    Attempted {
        applicable: Vec<Hypothesis>,
        palette: usize,
        /// Runs in attempt order; stops at the first success.
        runs: Vec<StrategyRun>,
        coloring: Option<Coloring>,
        used_exact_fallback: bool,
        /// Why the fallback gave no colouring, when it did not.
        fallback_error: Option<String>,
    },
}

impl StrategyOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            StrategyOutcome::NotApplicable => None,
            StrategyOutcome::Attempted { coloring, .. } => coloring.as_ref(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("maximum degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("gamma must be at least 2, got {0}")]
    InvalidGamma(usize),
    #[error("the degree bound overflows for delta {delta}, gamma {gamma}")]
    Overflow { delta: usize, gamma: usize },
}

fn finite_girth_at_most(g: &Distance, bound: usize) -> bool {
    matches!(g, Distance::Finite(x) if *x <= bound)
}

fn girth_at_least(g: &Distance, bound: usize) -> bool {
    match g {
        Distance::Finite(x) => *x >= bound,
        Distance::Infinite => true,
    }
}

/// The hypotheses that hold for `g`, in attempt order.
pub fn applicable_hypotheses(g: &Graph, gamma: usize) -> Vec<Hypothesis> {
    let gi = girth(g);
    let mut out = Vec::new();
    if g.min_degree() < g.max_degree() {
        out.push(Hypothesis::NonRegular);
    }
    if finite_girth_at_most(&gi, 2 * gamma - 1) {
        out.push(Hypothesis::ShortGirth);
    }
    if girth_at_least(&gi, 2 * gamma + 2) {
        let kappa = vertex_connectivity(g);
        let ok = if gamma >= 3 {
            kappa >= 3
        } else {
            kappa >= 4 && girth_at_least(&gi, 7)
        };
        if ok {
            out.push(Hypothesis::LongGirthConnected);
        }
    }
    out
}

fn non_regular_plans(g: &Graph) -> Vec<SeedPlan> {
    let delta = g.min_degree();
    let v = (0..g.order()).find(|&x| g.degree(x) == delta).expect("nonempty graph");
    let u = g.neighbors(v).first().expect("connected graph with an edge");
    vec![SeedPlan {
        hypothesis: Hypothesis::NonRegular,
        u,
        v,
        precolored: Vec::new(),
        removed: Vec::new(),
    }]
}

fn short_girth_plans(g: &Graph) -> Vec<SeedPlan> {
    let c = shortest_cycle(g).expect("girth is finite");
    vec![SeedPlan {
        hypothesis: Hypothesis::ShortGirth,
        u: c[1],
        v: c[0],
        precolored: Vec::new(),
        removed: Vec::new(),
    }]
}

/// Rotations and reflections of a shortest cycle, `v1` first.
fn cycle_views(c: &[usize]) -> Vec<Vec<usize>> {
    let len = c.len();
    let mut out = Vec::with_capacity(2 * len);
    for r in 0..len {
        out.push((0..len).map(|i| c[(r + i) % len]).collect());
        out.push((0..len).map(|i| c[(r + len - i) % len]).collect());
    }
    out
}

fn long_girth_plans(g: &Graph, gamma: usize) -> Vec<SeedPlan> {
    let Some(c) = shortest_cycle(g) else {
        return Vec::new();
    };
    let n = g.order();
    let len = c.len();
    let mut plans = Vec::new();
    for view in cycle_views(&c) {
        let (v1, v2) = (view[0], view[1]);
        if gamma >= 3 {
            let (x1, y1, y2) = (view[gamma], view[len - 1], view[len - 2]);
            // x2: distance exactly gamma - 1 from v1 once the rest of the
            // cycle is deleted
            let keep = BitSet::from_indices(n, (0..n).filter(|w| !view[1..].contains(w)));
            let (h, map) = g.induced_subgraph(&keep);
            let root = map.iter().position(|&w| w == v1).expect("v1 kept");
            let dist = bfs_raw(&h, root);
            let Some(x2) = (0..h.order()).find(|&i| dist[i] == gamma - 1).map(|i| map[i]) else {
                continue;
            };
            plans.push(SeedPlan {
                hypothesis: Hypothesis::LongGirthConnected,
                u: v2,
                v: v1,
                precolored: vec![(x1, 0), (y1, 0), (x2, 1), (y2, 1)],
                removed: vec![y1, y2],
            });
        } else {
            let (x1, x2) = (view[len - 1], view[2]);
            let dist_x1 = bfs_raw(g, x1);
            let dist_x2 = bfs_raw(g, x2);
            let x3 = g
                .neighbors(v1)
                .iter()
                .filter(|&b| b != v2 && b != x1)
                .flat_map(|b| g.neighbors(b).iter().filter(move |&w| w != v1))
                .filter(|&w| dist_x1[w] > 2 && dist_x2[w] > 2)
                .min();
            let Some(x3) = x3 else {
                continue;
            };
            plans.push(SeedPlan {
                hypothesis: Hypothesis::LongGirthConnected,
                u: v2,
                v: v1,
                precolored: vec![(x1, 0), (x2, 0), (x3, 0)],
                removed: vec![x1, x2, x3],
            });
        }
    }
    plans
}

/// Distance order from `uv` inside `G - removed`, restricted to vertices
/// the plan leaves uncoloured. `None` when the plan is unusable there.
fn plan_order(g: &Graph, plan: &SeedPlan) -> Option<Vec<usize>> {
    let n = g.order();
    let keep = BitSet::from_indices(n, (0..n).filter(|w| !plan.removed.contains(w)));
    let (h, map) = g.induced_subgraph(&keep);
    let local = |x: usize| map.iter().position(|&w| w == x);
    let order = order_by_distance_from_edge(&h, local(plan.u)?, local(plan.v)?).ok()?;
    let fixed: Vec<usize> = plan.precolored.iter().map(|&(w, _)| w).collect();
    Some(order.into_iter().map(|i| map[i]).filter(|w| !fixed.contains(w)).collect())
}

fn run_plan(g: &Graph, target: &Graph, palette: usize, plan: SeedPlan) -> Option<StrategyRun> {
    let order = plan_order(g, &plan)?;
    let mut pc = PartialColoring::new(target, palette);
    for &(w, c) in &plan.precolored {
        pc.color(w, c).ok()?;
    }
    if pc.uncolored().count() != order.len() {
        return None;
    }
    let completion_preconditions_hold = completion_hypotheses_hold(&pc, &order, plan.u, plan.v);
    let result = complete_partial_coloring(pc, &order, plan.u, plan.v).ok()?;
    Some(StrategyRun {
        plan,
        order,
        completion_preconditions_hold,
        result,
    })
}

/// Attempts an `(M - 1)`-colouring of `G^gamma` from every applicable
/// hypothesis in turn, falling back to the exact solver if all fail.
pub fn save_color_strategy(g: &Graph, gamma: usize, opts: &ExactOptions) -> Result<StrategyOutcome, StrategyError> {
    if gamma < 2 {
        return Err(StrategyError::InvalidGamma(gamma));
    }
    if !is_connected(g) {
        return Err(StrategyError::Disconnected);
    }
    let delta = g.max_degree();
    if delta < 3 {
        return Err(StrategyError::DegreeTooSmall(delta));
    }
    let applicable = applicable_hypotheses(g, gamma);
    if applicable.is_empty() {
        return Ok(StrategyOutcome::NotApplicable);
    }
    let m = moore_bound_m(delta, gamma).map_err(|_| StrategyError::Overflow { delta, gamma })?;
    let palette = usize::try_from(m - 1).map_err(|_| StrategyError::Overflow { delta, gamma })?;
    let pg = power_graph(g, gamma).expect("gamma >= 2");
    let target = pg.graph();

    let mut runs = Vec::new();
    let mut coloring = None;
    'outer: for &h in &applicable {
        let plans = match h {
            Hypothesis::NonRegular => non_regular_plans(g),
            Hypothesis::ShortGirth => short_girth_plans(g),
            Hypothesis::LongGirthConnected => long_girth_plans(g, gamma),
        };
        for plan in plans {
            if let Some(run) = run_plan(g, target, palette, plan) {
                let done = run.result.coloring().cloned();
                runs.push(run);
                if done.is_some() {
                    coloring = done;
                    break 'outer;
                }
            }
        }
    }

    let mut used_exact_fallback = false;
    let mut fallback_error = None;
    if coloring.is_none() {
        used_exact_fallback = true;
        match k_colorable(target, palette, opts) {
            Ok(found) => coloring = found,
            Err(e) => fallback_error = Some(e.to_string()),
        }
        if coloring.is_none() && fallback_error.is_none() {
            fallback_error = Some(format!("no proper colouring with {palette} colours exists"));
        }
    }
    Ok(StrategyOutcome::Attempted {
        applicable,
        palette,
        runs,
        coloring,
        used_exact_fallback,
        fallback_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    /// Tutte's 8-cage: duads of {0..5} joined to the synthemes containing
    /// them. Cubic, girth 8, connectivity 3.
    fn tutte_coxeter() -> Graph {
        let duads: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        let mut synthemes = Vec::new();
        for &(a, b) in &duads {
            for &(c, d) in &duads {
                for &(e, f) in &duads {
                    let s = [(a, b), (c, d), (e, f)];
                    let mut pts = [a, b, c, d, e, f];
                    pts.sort();
                    if pts == [0, 1, 2, 3, 4, 5] && (a, b) < (c, d) && (c, d) < (e, f) {
                        synthemes.push(s);
                    }
                }
            }
        }
        let edges = synthemes.iter().enumerate().flat_map(|(i, s)| {
            let duads = &duads;
            s.iter().map(move |d| (duads.iter().position(|x| x == d).unwrap(), 15 + i))
        });
        Graph::from_edges(30, edges.collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn tutte_coxeter_shape() {
        let g = tutte_coxeter();
        assert_eq!(g.order(), 30);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(girth(&g), Distance::Finite(8));
        assert_eq!(vertex_connectivity(&g), 3);
    }

    #[test]
    fn non_regular_small_graph() {
        let k4e = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let out = save_color_strategy(&k4e, 2, &ExactOptions::default()).unwrap();
        let StrategyOutcome::Attempted { applicable, palette, used_exact_fallback, .. } = &out else {
            panic!("hypothesis applies");
        };
        assert!(applicable.contains(&Hypothesis::NonRegular));
        assert_eq!(*palette, 8);
        assert!(!used_exact_fallback);
        let c = out.coloring().unwrap();
        assert!(c.is_proper_on(power_graph(&k4e, 2).unwrap().graph()));
        assert!(c.num_colors() <= 8);
    }

    #[test]
    fn moore_graph_not_applicable() {
        let out = save_color_strategy(&petersen(), 2, &ExactOptions::default()).unwrap();
        assert_eq!(out, StrategyOutcome::NotApplicable);
    }

    #[test]
    fn short_girth_complete_graph() {
        let out = save_color_strategy(&complete(4), 2, &ExactOptions::default()).unwrap();
        let StrategyOutcome::Attempted { applicable, .. } = &out else {
            panic!("girth 3 applies");
        };
        assert_eq!(applicable, &vec![Hypothesis::ShortGirth]);
        assert!(out.coloring().unwrap().num_colors() <= 8);
    }

    #[test]
    fn long_girth_cage_gamma_three() {
        let g = tutte_coxeter();
        assert_eq!(applicable_hypotheses(&g, 3), vec![Hypothesis::LongGirthConnected]);
        let out = save_color_strategy(&g, 3, &ExactOptions::default()).unwrap();
        let StrategyOutcome::Attempted { palette, runs, used_exact_fallback, .. } = &out else {
            panic!("long-girth hypothesis applies");
        };
        assert_eq!(*palette, 20);
        assert!(!runs.is_empty());
        let plan = &runs[0].plan;
        assert_eq!(plan.precolored.len(), 4);
        assert!(!used_exact_fallback, "constructive run should succeed");
        let c = out.coloring().unwrap();
        assert!(c.is_proper_on(power_graph(&g, 3).unwrap().graph()));
        assert!(c.num_colors() <= 20);
    }

    #[test]
    fn preconditions() {
        let o = ExactOptions::default();
        assert_eq!(save_color_strategy(&cycle(6), 2, &o), Err(StrategyError::DegreeTooSmall(2)));
        assert_eq!(save_color_strategy(&petersen(), 1, &o), Err(StrategyError::InvalidGamma(1)));
        let split = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)]).unwrap();
        assert_eq!(save_color_strategy(&split, 2, &o), Err(StrategyError::Disconnected));
    }
}
