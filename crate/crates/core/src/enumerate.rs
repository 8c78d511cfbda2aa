//! Canonical labelling and exhaustive generation of small connected graphs.
//!
//! Canonical forms come from colour refinement with individualization:
//! every leaf of the search tree is a discrete ordered partition, and the
//! canonical labelling is the leaf whose relabelled upper triangle is
//! lexicographically largest. Intended for graphs of at most ~12 vertices.

use crate::formats::encode_graph6;
use crate::graph::Graph;
use std::collections::BTreeSet;

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u16; k];
                    for w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn leaf_key(g: &Graph, labelling: &[usize]) -> Vec<u64> {
    let n = labelling.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut key = vec![0u64; bits.div_ceil(64).max(1)];
    let mut b = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(labelling[i], labelling[j]) {
                key[b / 64] |= 1 << (63 - b % 64);
            }
            b += 1;
        }
    }
    key
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let labelling: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let key = leaf_key(g, &labelling);
            if best.as_ref().is_none_or(|(k, _)| key > *k) {
                *best = Some((key, labelling));
            }
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut branch = cells.clone();
                let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
                branch.splice(target..=target, [vec![v], rest]);
                search(g, branch, best);
            }
        }
    }
}

/// Canonical relabelling: `result[i]` is the original vertex placed at
/// position `i`.
pub fn canonical_labelling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut cells: Partition = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(g, cells, &mut best);
    best.expect("nonempty search tree").1
}

pub fn relabel(g: &Graph, labelling: &[usize]) -> Graph {
    let mut position = vec![0; labelling.len()];
    for (i, &v) in labelling.iter().enumerate() {
        position[v] = i;
    }
    Graph::from_edges(
        g.order(),
        g.edges().iter().map(|&(u, v)| (position[u], position[v])),
    )
    .expect("relabelling preserves validity")
}

/// Canonical graph6 string: equal for isomorphic graphs.
pub fn canonical_graph6(g: &Graph) -> String {
    encode_graph6(&relabel(g, &canonical_labelling(g)))
}

/// All connected graphs on exactly `n` vertices up to isomorphism, as
/// sorted canonical graph6 strings.
///
/// Every connected graph has a vertex whose deletion leaves it connected,
/// so the order-`n` graphs arise from order-`n-1` ones by adding a vertex
/// with a nonempty neighbourhood.
pub fn connected_graphs(n: usize) -> Vec<String> {
    connected_graphs_up_to(n).pop().unwrap_or_default()
}

/// Index `k` holds the connected graphs on `k + 1` vertices, for
/// `k + 1 <= max_n`.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Vec<String>> {
    use rayon::prelude::*;
    let mut levels: Vec<Vec<String>> = Vec::new();
    if max_n == 0 {
        return levels;
    }
    levels.push(vec![encode_graph6(&Graph::empty(1))]);
    for n in 2..=max_n {
        let parents: Vec<Graph> = levels[n - 2]
            .iter()
            .map(|s| crate::formats::parse_graph6(s).expect("own encoding"))
            .collect();
        let children: BTreeSet<String> = parents
            .par_iter()
            .flat_map_iter(|p| {
                let m = n - 1;
                (1u64..1 << m).map(move |mask| {
                    let extra = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| (i, m));
                    let child = Graph::from_edges(n, p.edges().iter().copied().chain(extra))
                        .expect("valid extension");
                    canonical_graph6(&child)
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        levels.push(children.into_iter().collect());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn canonical_form_is_invariant_under_relabelling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for g in [petersen(), cycle(7), star(6), torus(3, 4), random_regular(12, 3, 3).unwrap()] {
            let c = canonical_graph6(&g);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..g.order()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_graph6(&relabel(&g, &perm)), c);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // same degree sequence, different graphs
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_graph6(&two_triangles), canonical_graph6(&cycle(6)));
        assert_ne!(
            canonical_graph6(&complete_bipartite(3, 3)),
            canonical_graph6(&Graph::from_edges(6, [(0,1),(1,2),(2,0),(3,4),(4,5),(5,3),(0,3),(1,4),(2,5)]).unwrap())
        );
    }

    #[test]
    fn small_counts_match_known_sequence() {
        // connected graphs on n unlabelled vertices: 1, 1, 2, 6, 21, 112
        let counts: Vec<usize> = connected_graphs_up_to(6).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }
}
