//! Adjacency spectra: power-iteration spectral radius, exact integer matrix
//! inequalities between power graphs, and spectral bounds on powers.

use crate::graph::Graph;
use crate::metrics::{girth, is_connected, is_two_degree_regular, power_graph, Distance};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: u64 = 1_000_000;
/// Largest order accepted by dense matrix routines.
pub const MATRIX_CAP: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: u64, residual: f64 },
    #[error("order {n} exceeds the dense matrix cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("gamma must be at least 2, got {0}")]
    InvalidGamma(usize),
    #[error("matrix is not entrywise nonnegative")]
    Negative,
}

/// Equality slack for spectral comparisons on an `n`-vertex graph.
pub fn comparison_tolerance(n: usize) -> f64 {
    f64::max(1e-8, 1e-12 * n as f64)
}

/// Rounds to 12 significant digits for reporting.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn serialize_sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.data[i * self.n..(i + 1) * self.n]
                .iter()
                .zip(x)
                .map(|(&a, &b)| a as f64 * b)
                .sum();
        }
    }
}

fn check_cap(n: usize) -> Result<(), SpectralError> {
    if n > MATRIX_CAP {
        return Err(SpectralError::TooLarge { n, cap: MATRIX_CAP });
    }
    Ok(())
}

/// 0/1 symmetric adjacency matrix with zero diagonal.
pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.order());
    for &(u, v) in g.edges() {
        m.set(u, v, 1);
        m.set(v, u, 1);
    }
    m
}

pub fn degree_matrix(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.order());
    for v in 0..g.order() {
        m.set(v, v, g.degree(v) as i64);
    }
    m
}

/// `D - A`.
pub fn laplacian(g: &Graph) -> IntMatrix {
    degree_matrix(g).sub(&adjacency_matrix(g))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    #[serde(serialize_with = "serialize_sig12")]
    pub lambda1: f64,
    pub iterations: u64,
    /// `||A x - lambda1 x||_inf` for the returned unit-max-norm vector.
    pub residual: f64,
    pub perron_vector: Vec<f64>,
}

/// Largest adjacency eigenvalue by power iteration on `A + I`.
///
/// `A + I` is primitive for connected graphs, so the iteration converges
/// to the Perron pair even when `-lambda1` is also an eigenvalue.
pub fn spectral_radius(g: &Graph, tolerance: f64) -> Result<SpectralResult, SpectralError> {
    spectral_radius_with_cap(g, tolerance, DEFAULT_MAX_ITERATIONS)
}

pub fn spectral_radius_with_cap(
    g: &Graph,
    tolerance: f64,
    max_iterations: u64,
) -> Result<SpectralResult, SpectralError> {
    let n = g.order();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    if !(tolerance > 0.0) {
        return Err(SpectralError::BadTolerance(tolerance));
    }
    if !is_connected(g) {
        return Err(SpectralError::Disconnected);
    }
    let apply = |x: &[f64], y: &mut [f64]| {
        for (v, yv) in y.iter_mut().enumerate() {
            *yv = g.neighbors(v).iter().map(|w| x[w]).sum();
        }
    };
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iterations {
        apply(&x, &mut ax);
        let lambda = dot(&x, &ax) / dot(&x, &x);
        residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - lambda * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tolerance {
            return Ok(SpectralResult {
                lambda1: lambda,
                iterations: it,
                residual,
                perron_vector: x,
            });
        }
        let mut scale = 0.0f64;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi += axi;
            scale = scale.max(xi.abs());
        }
        x.iter_mut().for_each(|xi| *xi /= scale);
    }
    Err(SpectralError::NoConvergence {
        iterations: max_iterations,
        residual,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Two-sided enclosure of a Perron root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerronBracket {
    pub lower: f64,
    pub upper: f64,
    pub iterations: u64,
}

/// Perron root of an entrywise positive square matrix, bracketed by the
/// Collatz-Wielandt quotients `min_i (Mx)_i / x_i <= rho <= max_i (Mx)_i / x_i`
/// along power iteration. Stops once `upper - lower <= tolerance`.
pub fn perron_root(m: &IntMatrix, tolerance: f64) -> Result<PerronBracket, SpectralError> {
    let n = m.order();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    check_cap(n)?;
    if m.data.iter().any(|&a| a < 0) {
        return Err(SpectralError::Negative);
    }
    if !(tolerance > 0.0) {
        return Err(SpectralError::BadTolerance(tolerance));
    }
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=DEFAULT_MAX_ITERATIONS {
        m.mul_vec(&x, &mut y);
        let ratios = x.iter().zip(&y).map(|(xi, yi)| yi / xi);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        lower = f64::max(lower, lo);
        upper = f64::min(upper, hi);
        if upper - lower <= tolerance {
            return Ok(PerronBracket { lower, upper, iterations: it });
        }
        // iterate with M + I so that irreducible inputs converge
        let mut scale = 0.0f64;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            scale = scale.max(*xi);
        }
        if scale == 0.0 || !scale.is_finite() {
            break;
        }
        x.iter_mut().for_each(|xi| *xi /= scale);
        if x.iter().any(|&xi| xi == 0.0) {
            break;
        }
    }
    Err(SpectralError::NoConvergence {
        iterations: DEFAULT_MAX_ITERATIONS,
        residual: upper - lower,
    })
}

/// One checked inequality `lhs <= rhs`, entrywise over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntrywiseCheck {
    pub holds: bool,
    pub equality: bool,
    /// First `(row, col)` where `lhs > rhs`, if any.
    pub first_violation: Option<(usize, usize)>,
}

impl EntrywiseCheck {
    fn compare(lhs: &IntMatrix, rhs: &IntMatrix) -> Self {
        let n = lhs.order();
        let first_violation = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| lhs.get(i, j) > rhs.get(i, j));
        EntrywiseCheck {
            holds: first_violation.is_none(),
            equality: lhs == rhs,
            first_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub gamma: usize,
    pub girth: Distance,
    /// `A(G^gamma) <= A + A^2 + ... + A^gamma`.
    pub walk_sum: EntrywiseCheck,
    /// `A(G^2) <= A^2 - L`, for `gamma = 2`.
    pub square: Option<EntrywiseCheck>,
    /// `A(G^gamma) <= A(G^{gamma-1}) A - A (D - I) - L`, for `gamma >= 3`.
    pub right_product: Option<EntrywiseCheck>,
    /// `A(G^gamma) <= A A(G^{gamma-1}) - (D - I) A - L`, for `gamma >= 3`.
    pub left_product: Option<EntrywiseCheck>,
    /// `girth >= 2 gamma + 1`.
    pub girth_predicate: bool,
    /// Every equality flag equals `girth_predicate`.
    pub equality_matches_girth: bool,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.walk_sum.holds
            && [&self.square, &self.right_product, &self.left_product]
                .iter()
                .all(|c| c.as_ref().is_none_or(|c| c.holds))
    }
}

/// Exact integer checks of the walk-count upper bounds on `A(G^gamma)`.
pub fn check_power_matrix_inequalities(g: &Graph, gamma: usize) -> Result<InequalityReport, SpectralError> {
    let n = g.order();
    if n < 3 {
        return Err(SpectralError::TooSmall(n));
    }
    if gamma < 2 {
        return Err(SpectralError::InvalidGamma(gamma));
    }
    check_cap(n)?;
    if !is_connected(g) {
        return Err(SpectralError::Disconnected);
    }
    let a = adjacency_matrix(g);
    let l = laplacian(g);
    let target = adjacency_matrix(power_graph(g, gamma).expect("gamma >= 2").graph());

    let mut walk_sum = a.clone();
    let mut a_pow = a.clone();
    for _ in 2..=gamma {
        a_pow = a_pow.mul(&a);
        walk_sum = walk_sum.add(&a_pow);
    }
    let walk_sum = EntrywiseCheck::compare(&target, &walk_sum);

    let gi = girth(g);
    let girth_predicate = match gi {
        Distance::Finite(x) => x >= 2 * gamma + 1,
        Distance::Infinite => true,
    };

    let (mut square, mut right_product, mut left_product) = (None, None, None);
    if gamma == 2 {
        square = Some(EntrywiseCheck::compare(&target, &a.mul(&a).sub(&l)));
    } else {
        let prev = adjacency_matrix(power_graph(g, gamma - 1).expect("gamma >= 2").graph());
        let d_minus_i = degree_matrix(g).sub(&IntMatrix::identity(n));
        let right = prev.mul(&a).sub(&a.mul(&d_minus_i)).sub(&l);
        let left = a.mul(&prev).sub(&d_minus_i.mul(&a)).sub(&l);
        right_product = Some(EntrywiseCheck::compare(&target, &right));
        left_product = Some(EntrywiseCheck::compare(&target, &left));
    }
    let equality_matches_girth = [&square, &right_product, &left_product]
        .iter()
        .filter_map(|c| c.as_ref())
        .all(|c| c.equality == girth_predicate);
    Ok(InequalityReport {
        gamma,
        girth: gi,
        walk_sum,
        square,
        right_product,
        left_product,
        girth_predicate,
        equality_matches_girth,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBoundReport {
    pub gamma: usize,
    pub tolerance: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub lambda1: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub lambda1_square: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub lambda1_prev: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub lambda1_power: f64,
    /// `lambda1(G^2) <= lambda1(G)^2 + tol`.
    pub square_bound_holds: bool,
    /// `|lambda1(G^2) - lambda1(G)^2| <= tol`.
    pub square_equality: bool,
    /// 2-degree regular and girth at least 5.
    pub square_equality_predicate: bool,
    /// `lambda1(G)^gamma - lambda1(G^gamma)`, for `gamma >= 3`.
    pub power_gap: Option<f64>,
    /// `lambda1(G^{gamma-1}) lambda1(G) - lambda1(G^gamma)`, for `gamma >= 3`.
    pub product_gap: Option<f64>,
    /// A gap of at most `tol` was seen; reported, not treated as failure.
    pub small_gap_flag: bool,
}

/// Compares `lambda1` of `G^2` and `G^gamma` against powers of `lambda1(G)`.
pub fn check_spectral_power_bounds(
    g: &Graph,
    gamma: usize,
    tolerance: f64,
) -> Result<SpectralBoundReport, SpectralError> {
    let n = g.order();
    if n < 3 {
        return Err(SpectralError::TooSmall(n));
    }
    if gamma < 2 {
        return Err(SpectralError::InvalidGamma(gamma));
    }
    let radius = |h: &Graph| spectral_radius(h, DEFAULT_TOLERANCE).map(|r| r.lambda1);
    let pow = |k: usize| power_graph(g, k).expect("k >= 1").into_graph();
    let lambda1 = radius(g)?;
    let lambda1_square = radius(&pow(2))?;
    let lambda1_prev = if gamma == 2 { lambda1 } else { radius(&pow(gamma - 1))? };
    let lambda1_power = if gamma == 2 { lambda1_square } else { radius(&pow(gamma))? };

    let sq = lambda1 * lambda1;
    let girth5 = !matches!(girth(g), Distance::Finite(x) if x < 5);
    let (power_gap, product_gap) = if gamma >= 3 {
        (
            Some(lambda1.powi(gamma as i32) - lambda1_power),
            Some(lambda1_prev * lambda1 - lambda1_power),
        )
    } else {
        (None, None)
    };
    let small_gap_flag = power_gap.into_iter().chain(product_gap).any(|gap| gap <= tolerance);
    Ok(SpectralBoundReport {
        gamma,
        tolerance,
        lambda1,
        lambda1_square,
        lambda1_prev,
        lambda1_power,
        square_bound_holds: lambda1_square <= sq + tolerance,
        square_equality: (lambda1_square - sq).abs() <= tolerance,
        square_equality_predicate: girth5 && is_two_degree_regular(g),
        power_gap,
        product_gap,
        small_gap_flag,
    })
}
