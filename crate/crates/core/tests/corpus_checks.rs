//! Whole-corpus checks against independent oracles.

use distchroma::bitset::BitSet;
use distchroma::bounds::moore_bound_m;
use distchroma::coloring::{
    chi_gamma, completion_hypotheses_hold, complete_partial_coloring, order_by_distance_from_edge,
    ExactOptions, PartialColoring,
};
use distchroma::corpus::read_graph6_file;
use distchroma::enumerate::connected_graphs_up_to;
use distchroma::formats::encode_graph6;
use distchroma::metrics::power_graph;
use distchroma::spectral::{comparison_tolerance, spectral_radius, DEFAULT_TOLERANCE};
use distchroma::Graph;
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::path::PathBuf;

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/connected_upto8.g6")
}

fn corpus() -> Vec<Graph> {
    read_graph6_file(&corpus_path()).unwrap().into_iter().map(|(_, g)| g).collect()
}

/// Plain backtracking in index order, no heuristics.
fn brute_force_chromatic(g: &Graph) -> usize {
    fn fits(g: &Graph, colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == g.order() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if fits(g, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=g.order()).find(|&k| fits(g, &mut Vec::new(), k)).unwrap()
}

fn dense_lambda1(g: &Graph) -> f64 {
    let n = g.order();
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigen().eigenvalues.iter().copied().fold(f64::MIN, f64::max)
}

#[test]
fn shipped_corpus_matches_enumeration() {
    let generated: Vec<String> = connected_graphs_up_to(8).into_iter().flatten().collect();
    let shipped: Vec<String> = corpus().iter().map(encode_graph6).collect();
    let counts: Vec<usize> = (1..=8).map(|n| shipped.iter().filter(|s| s.as_bytes()[0] as usize - 63 == n).count()).collect();
    // connected graphs on 1..8 unlabelled vertices
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853, 11117]);
    assert_eq!(shipped, generated);
}

#[test]
fn exact_solver_matches_brute_force() {
    let opts = ExactOptions::default();
    let bad: Vec<String> = corpus()
        .par_iter()
        .flat_map_iter(|g| {
            let opts = opts.clone();
            [2usize, 3].into_iter().filter_map(move |gamma| {
                let target = power_graph(g, gamma).unwrap().into_graph();
                let (k, w) = chi_gamma(g, gamma, &opts).unwrap();
                let ok = w.is_proper_on(&target) && w.num_colors() == k && k == brute_force_chromatic(&target);
                (!ok).then(|| format!("{} gamma={gamma}", encode_graph6(g)))
            })
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn completion_succeeds_whenever_its_hypotheses_hold() {
    let results: Vec<(usize, usize)> = corpus()
        .par_iter()
        .filter(|g| g.max_degree() >= 3)
        .map(|g| {
            let palette = moore_bound_m(g.max_degree(), 2).unwrap() as usize - 1;
            let pg = power_graph(g, 2).unwrap();
            let (mut applicable, mut failed) = (0, 0);
            for &(a, b) in g.edges() {
                for (u, v) in [(a, b), (b, a)] {
                    let order = order_by_distance_from_edge(g, u, v).unwrap();
                    let pc = PartialColoring::new(pg.graph(), palette);
                    if completion_hypotheses_hold(&pc, &order, u, v) {
                        applicable += 1;
                        let out = complete_partial_coloring(pc, &order, u, v).unwrap();
                        failed += out.coloring().is_none() as usize;
                    }
                }
            }
            (applicable, failed)
        })
        .collect();
    let applicable: usize = results.iter().map(|r| r.0).sum();
    let failed: usize = results.iter().map(|r| r.1).sum();
    assert!(applicable > 0);
    assert_eq!(failed, 0);
}

#[test]
fn spectral_radius_agrees_with_dense_solver() {
    let bad: Vec<String> = corpus()
        .par_iter()
        .filter_map(|g| {
            let r = spectral_radius(g, DEFAULT_TOLERANCE).unwrap();
            let oracle = dense_lambda1(g);
            let avg = 2.0 * g.size() as f64 / g.order() as f64;
            let ok = (r.lambda1 - oracle).abs() < 1e-8
                && r.residual <= DEFAULT_TOLERANCE
                && r.perron_vector.iter().all(|&x| x > 0.0)
                && avg <= r.lambda1 + 1e-9
                && r.lambda1 <= g.max_degree() as f64 + 1e-9;
            (!ok).then(|| encode_graph6(g))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn chromatic_number_below_spectral_radius_plus_one() {
    let opts = ExactOptions::default();
    let bad: Vec<String> = corpus()
        .par_iter()
        .filter_map(|g| {
            let chi = chi_gamma(g, 1, &opts).unwrap().0 as f64;
            let lambda = spectral_radius(g, DEFAULT_TOLERANCE).unwrap().lambda1;
            let tol = comparison_tolerance(g.order());
            let odd_cycle = g.order() % 2 == 1 && g.order() >= 3 && g.degrees().iter().all(|&d| d == 2);
            let equality_expected = g.is_complete() || odd_cycle;
            let ok = chi <= lambda + 1.0 + tol && ((chi - lambda - 1.0).abs() <= tol) == equality_expected;
            (!ok).then(|| encode_graph6(g))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn distance_chromatic_number_below_spectral_sum() {
    let opts = ExactOptions::default();
    let bad: Vec<String> = corpus()
        .par_iter()
        .flat_map_iter(|g| {
            let opts = opts.clone();
            let lambda = spectral_radius(g, DEFAULT_TOLERANCE).unwrap().lambda1;
            [2usize, 3].into_iter().filter_map(move |gamma| {
                if lambda <= 1.0 {
                    return None;
                }
                let chi = chi_gamma(g, gamma, &opts).unwrap().0 as f64;
                let sum = (lambda.powi(gamma as i32 + 1) - 1.0) / (lambda - 1.0);
                (chi > sum + comparison_tolerance(g.order())).then(|| encode_graph6(g))
            })
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn deleting_an_edge_from_the_square() {
    // the subgraph G^2 - {u, v} is induced on the remaining vertices
    let g = distchroma::generators::petersen();
    let sq = power_graph(&g, 2).unwrap().into_graph();
    let keep = BitSet::from_indices(10, 2..10);
    let (h, _) = sq.induced_subgraph(&keep);
    assert_eq!(brute_force_chromatic(&h), 8);
}
