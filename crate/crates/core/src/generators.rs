//! Named and random graph families.

use crate::graph::Graph;
use crate::metrics::is_connected;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Maximum pairing-model attempts for random regular graphs.
pub const RANDOM_REGULAR_RETRIES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("invalid parameters for {class}: {reason}")]
    InvalidParameters { class: &'static str, reason: String },
    #[error("no connected simple {d}-regular graph on {n} vertices after {attempts} attempts")]
    RetriesExhausted { n: usize, d: usize, attempts: usize },
    #[error("unrecognised graph spec {0:?}")]
    UnknownSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum GraphClass {
    Path { n: usize },
    Cycle { n: usize },
    /// `n` is the total vertex count, so the graph is K_{1,n-1}.
    Star { n: usize },
    Complete { n: usize },
    Petersen,
    HoffmanSingleton,
    CompleteBipartite { a: usize, b: usize },
    /// Toroidal `rows x cols` grid, 4-regular.
    SquareLatticeTorus { rows: usize, cols: usize },
    /// Finite honeycomb patch of `rows x cols` hexagons.
    HexLattice { rows: usize, cols: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
}

fn invalid(class: &'static str, reason: impl Into<String>) -> GenerateError {
    GenerateError::InvalidParameters {
        class,
        reason: reason.into(),
    }
}

impl GraphClass {
    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Path { .. } => "path",
            GraphClass::Cycle { .. } => "cycle",
            GraphClass::Star { .. } => "star",
            GraphClass::Complete { .. } => "complete",
            GraphClass::Petersen => "petersen",
            GraphClass::HoffmanSingleton => "hoffman-singleton",
            GraphClass::CompleteBipartite { .. } => "complete-bipartite",
            GraphClass::SquareLatticeTorus { .. } => "torus",
            GraphClass::HexLattice { .. } => "hex",
            GraphClass::RandomRegular { .. } => "random-regular",
        }
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let name = self.name();
        match *self {
            GraphClass::Path { n } | GraphClass::Complete { n } if n < 1 => {
                Err(invalid(name, "n must be at least 1"))
            }
            GraphClass::Cycle { n } if n < 3 => Err(invalid(name, "n must be at least 3")),
            GraphClass::Star { n } if n < 2 => Err(invalid(name, "n must be at least 2")),
            GraphClass::CompleteBipartite { a, b } if a < 1 || b < 1 => {
                Err(invalid(name, "both parts must be nonempty"))
            }
            GraphClass::SquareLatticeTorus { rows, cols } if rows < 3 || cols < 3 => {
                Err(invalid(name, "rows and cols must be at least 3"))
            }
            GraphClass::HexLattice { rows, cols } if rows < 1 || cols < 1 => {
                Err(invalid(name, "rows and cols must be at least 1"))
            }
            GraphClass::RandomRegular { n, d, .. } => {
                if d >= n {
                    Err(invalid(name, format!("degree {d} must be below n = {n}")))
                } else if n * d % 2 != 0 {
                    Err(invalid(name, format!("n*d = {} must be even", n * d)))
                } else if d < 2 && n > 2 {
                    Err(invalid(name, "degree below 2 cannot be connected beyond two vertices"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph, GenerateError> {
        self.validate()?;
        let g = match *self {
            GraphClass::Path { n } => path(n),
            GraphClass::Cycle { n } => cycle(n),
            GraphClass::Star { n } => star(n),
            GraphClass::Complete { n } => complete(n),
            GraphClass::Petersen => petersen(),
            GraphClass::HoffmanSingleton => hoffman_singleton(),
            GraphClass::CompleteBipartite { a, b } => complete_bipartite(a, b),
            GraphClass::SquareLatticeTorus { rows, cols } => torus(rows, cols),
            GraphClass::HexLattice { rows, cols } => hex_lattice(rows, cols),
            GraphClass::RandomRegular { n, d, seed } => random_regular(n, d, seed)?,
        };
        Ok(g)
    }
}

/// `generate(class)` as a free function.
pub fn generate(class: &GraphClass) -> Result<Graph, GenerateError> {
    class.generate()
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphClass::Path { n }
            | GraphClass::Cycle { n }
            | GraphClass::Star { n }
            | GraphClass::Complete { n } => write!(f, "{}:{n}", self.name()),
            GraphClass::Petersen | GraphClass::HoffmanSingleton => f.write_str(self.name()),
            GraphClass::CompleteBipartite { a, b } => write!(f, "{}:{a},{b}", self.name()),
            GraphClass::SquareLatticeTorus { rows, cols } | GraphClass::HexLattice { rows, cols } => {
                write!(f, "{}:{rows},{cols}", self.name())
            }
            GraphClass::RandomRegular { n, d, seed } => {
                write!(f, "random-regular:n={n},d={d},seed={seed}")
            }
        }
    }
}

/// Mini-syntax: `petersen`, `hoffman-singleton`, `path:10`, `cycle:7`,
/// `star:6`, `complete:5`, `complete-bipartite:3,3`, `torus:4,5`, `hex:2,3`,
/// `random-regular:n=20,d=3,seed=42`.
impl FromStr for GraphClass {
    type Err = GenerateError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let unknown = || GenerateError::UnknownSpec(spec.to_string());
        let (name, args) = match spec.split_once(':') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (spec.trim(), ""),
        };
        let ints = || -> Result<Vec<usize>, GenerateError> {
            args.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| unknown()))
                .collect()
        };
        let one = || -> Result<usize, GenerateError> {
            match ints()?.as_slice() {
                [n] => Ok(*n),
                _ => Err(unknown()),
            }
        };
        let two = || -> Result<(usize, usize), GenerateError> {
            match ints()?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(unknown()),
            }
        };
        let class = match name.to_ascii_lowercase().as_str() {
            "petersen" if args.is_empty() => GraphClass::Petersen,
            "hoffman-singleton" | "hoffman_singleton" if args.is_empty() => {
                GraphClass::HoffmanSingleton
            }
            "path" => GraphClass::Path { n: one()? },
            "cycle" => GraphClass::Cycle { n: one()? },
            "star" => GraphClass::Star { n: one()? },
            "complete" => GraphClass::Complete { n: one()? },
            "complete-bipartite" => {
                let (a, b) = two()?;
                GraphClass::CompleteBipartite { a, b }
            }
            "torus" => {
                let (rows, cols) = two()?;
                GraphClass::SquareLatticeTorus { rows, cols }
            }
            "hex" => {
                let (rows, cols) = two()?;
                GraphClass::HexLattice { rows, cols }
            }
            "random-regular" => {
                let (mut n, mut d, mut seed) = (None, None, 0u64);
                for kv in args.split(',') {
                    let (k, v) = kv.split_once('=').ok_or_else(unknown)?;
                    match k.trim() {
                        "n" => n = Some(v.trim().parse().map_err(|_| unknown())?),
                        "d" => d = Some(v.trim().parse().map_err(|_| unknown())?),
                        "seed" => seed = v.trim().parse().map_err(|_| unknown())?,
                        _ => return Err(unknown()),
                    }
                }
                GraphClass::RandomRegular {
                    n: n.ok_or_else(unknown)?,
                    d: d.ok_or_else(unknown)?,
                    seed,
                }
            }
            _ => return Err(unknown()),
        };
        Ok(class)
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produces valid edges")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// K_{1,n-1} with center 0.
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

/// Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut edges = Vec::new();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((x, y));
            }
        }
    }
    build(10, edges)
}

/// Robertson's pentagon/pentagram construction: pentagons P_h and
/// pentagrams Q_i for h, i in 0..5; vertex j of P_h joins vertex
/// `h*i + j mod 5` of Q_i.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| h * 5 + j;
    let q = |i: usize, j: usize| 25 + i * 5 + j;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, (j + 1) % 5)));
            edges.push((q(h, j), q(h, (j + 2) % 5)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    build(50, edges)
}

pub fn torus(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            edges.push((id(r, c), id(r, (c + 1) % cols)));
            edges.push((id(r, c), id((r + 1) % rows, c)));
        }
    }
    build(rows * cols, edges)
}

/// Honeycomb patch in brick-wall form: a `(rows+1) x (2*cols+2)` grid of
/// points with all horizontal edges and alternating vertical edges, trimmed
/// of the two degree-one corners.
pub fn hex_lattice(rows: usize, cols: usize) -> Graph {
    let width = 2 * cols + 2;
    let height = rows + 1;
    let id = |r: usize, c: usize| r * width + c;
    let mut edges = Vec::new();
    for r in 0..height {
        for c in 0..width - 1 {
            edges.push((id(r, c), id(r, c + 1)));
        }
        if r + 1 < height {
            for c in (0..width).filter(|c| (c + r) % 2 == 0) {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let full = build(width * height, edges);
    // drop degree-one corner vertices
    let keep = crate::bitset::BitSet::from_indices(
        full.order(),
        (0..full.order()).filter(|&v| full.degree(v) > 1),
    );
    full.induced_subgraph(&keep).0
}

/// Pairing-model random `d`-regular graph, rejecting loops, multi-edges and
/// disconnected outcomes; deterministic in `seed`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..RANDOM_REGULAR_RETRIES {
        points.shuffle(&mut rng);
        let mut seen = std::collections::HashSet::with_capacity(points.len() / 2);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        let g = build(n, edges);
        if is_connected(&g) {
            return Ok(g);
        }
    }
    Err(GenerateError::RetriesExhausted {
        n,
        d,
        attempts: RANDOM_REGULAR_RETRIES,
    })
}
