//! Upper bounds on `chi(G^gamma)`, Moore-graph detection, and scans for
//! graphs that would need `M` or more colours.

use crate::clique::{clique_number, CliqueError};
use crate::coloring::{
    applicable_hypotheses, chi_gamma, save_color_strategy, ExactOptions, Hypothesis, SolveError,
    StrategyOutcome,
};
use crate::connectivity::vertex_connectivity;
use crate::formats::encode_graph6;
use crate::graph::Graph;
use crate::metrics::{diameter, girth, is_connected, power_graph, Distance, InvariantReport};
use crate::spectral::{comparison_tolerance, spectral_radius, SpectralError, DEFAULT_TOLERANCE};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("maximum degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("gamma must be at least 2, got {0}")]
    InvalidGamma(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("degree bound overflows for delta {delta}, gamma {gamma}")]
    Overflow { delta: usize, gamma: usize },
    #[error("the clique check excludes Moore graphs")]
    MooreGraph,
    #[error("maximum degree {0} is even")]
    EvenDegree(u64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

fn check_params(delta: usize, gamma: usize) -> Result<(), BoundsError> {
    if delta < 3 {
        return Err(BoundsError::DegreeTooSmall(delta));
    }
    if gamma < 2 {
        return Err(BoundsError::InvalidGamma(gamma));
    }
    Ok(())
}

/// `M = delta ((delta - 1)^gamma - 1) / (delta - 2)`, the largest possible
/// degree of `G^gamma`. The division is exact.
pub fn moore_bound_m(delta: usize, gamma: usize) -> Result<u64, BoundsError> {
    check_params(delta, gamma)?;
    let overflow = || BoundsError::Overflow { delta, gamma };
    let d = delta as u128;
    let gamma32 = u32::try_from(gamma).map_err(|_| overflow())?;
    let p = (d - 1).checked_pow(gamma32).ok_or_else(overflow)?;
    let m = d.checked_mul(p - 1).ok_or_else(overflow)? / (d - 2);
    u64::try_from(m).map_err(|_| overflow())
}

/// Smallest integer `delta` with `delta >= (10^14 + 1)^(1/gamma) + 1`.
///
/// Equivalently `t + 1` for the least integer `t` with `t^gamma >= 10^14 + 1`.
pub fn large_degree_threshold(gamma: usize) -> u64 {
    assert!(gamma >= 1);
    const TARGET: u128 = 100_000_000_000_001;
    let reaches = |t: u128| {
        let mut acc: u128 = 1;
        for _ in 0..gamma {
            acc = acc.saturating_mul(t);
            if acc >= TARGET {
                return true;
            }
        }
        acc >= TARGET
    };
    let (mut lo, mut hi) = (1u128, TARGET);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as u64 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MooreChecks {
    pub is_regular: bool,
    pub order_matches: bool,
    pub girth_is_2gamma_plus_1: bool,
    pub diameter_is_gamma: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MooreCertificate {
    pub delta: usize,
    pub gamma: usize,
    pub order_expected: u64,
    pub checks: MooreChecks,
    pub is_moore: bool,
}

/// Regular of order `M + 1` with girth `2 gamma + 1` and diameter `gamma`.
pub fn detect_moore(g: &Graph, gamma: usize) -> Result<MooreCertificate, BoundsError> {
    let delta = g.max_degree();
    let m = moore_bound_m(delta, gamma)?;
    let checks = MooreChecks {
        is_regular: g.min_degree() == delta,
        order_matches: g.order() as u64 == m + 1,
        girth_is_2gamma_plus_1: girth(g) == Distance::Finite(2 * gamma + 1),
        diameter_is_gamma: diameter(g) == Distance::Finite(gamma),
    };
    Ok(MooreCertificate {
        delta,
        gamma,
        order_expected: m + 1,
        is_moore: checks.is_regular
            && checks.order_matches
            && checks.girth_is_2gamma_plus_1
            && checks.diameter_is_gamma,
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTag {
    /// `M + 1`, always.
    DegreeBound,
    /// `M` when `girth != 2 gamma + 1`.
    GirthNotMoore,
    /// `M - 1` for non-regular graphs.
    NonRegular,
    /// `M - 1` when `girth <= 2 gamma - 1`.
    ShortGirth,
    /// `M - 1` for long girth with high connectivity.
    LongGirthConnected,
    /// `M - 1` for odd `Delta` above the large-degree threshold, non-Moore.
    LargeOddDegree,
    /// `(lambda^(gamma+1) - 1) / (lambda - 1)`.
    SpectralSum,
    /// `lambda^2 + 1` for `gamma = 2`; strictly below `lambda^gamma + 1` otherwise.
    SpectralPower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub tag: BoundTag,
    /// Integer bound on `chi`; spectral values are rounded with tolerance.
    pub value: u64,
    /// Unrounded value; equals `value` for degree bounds.
    pub raw: f64,
    /// Whether the bound is strict in `raw`.
    pub strict: bool,
    pub applicable: bool,
    pub evidence: String,
}

/// Exact `chi_gamma`, or why it is not known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExactChi {
    Known(usize),
    Unknown { unknown: String },
}

impl ExactChi {
    pub fn known(&self) -> Option<usize> {
        match self {
            ExactChi::Known(k) => Some(*k),
            ExactChi::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqualityClass {
    MooreEquality,
    StrictBelow,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub n: usize,
    pub gamma: usize,
    pub delta: usize,
    #[serde(rename = "M")]
    pub m: u64,
    pub lambda1: f64,
    pub bounds: Vec<BoundEntry>,
    pub best_bound: u64,
    pub exact_chi: ExactChi,
    pub equality_class: EqualityClass,
    pub moore: MooreCertificate,
    /// Applicable bounds exceeded by `exact_chi`.
    pub violations: Vec<BoundTag>,
    /// `exact_chi = M + 1` on a graph that is not Moore.
    pub moore_equality_mismatch: bool,
}

impl BoundReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty() && !self.moore_equality_mismatch
    }

    pub fn bound(&self, tag: BoundTag) -> &BoundEntry {
        self.bounds.iter().find(|b| b.tag == tag).expect("every tag is reported")
    }
}

#[derive(Debug, Clone)]
pub struct BoundOptions {
    pub exact: ExactOptions,
    /// Skip the exact solver entirely.
    pub skip_exact: bool,
    /// Power-iteration residual tolerance.
    pub spectral_tolerance: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            exact: ExactOptions::default(),
            skip_exact: false,
            spectral_tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn describe_girth(g: &Distance) -> String {
    match g {
        Distance::Finite(x) => x.to_string(),
        Distance::Infinite => "inf".to_string(),
    }
}

/// Evaluates every bound, decides applicability from the graph's
/// invariants, and compares against the exact value when within caps.
pub fn evaluate_bounds(
    g: &Graph,
    gamma: usize,
    id: &str,
    opts: &BoundOptions,
) -> Result<BoundReport, BoundsError> {
    let delta = g.max_degree();
    check_params(delta, gamma)?;
    if !is_connected(g) {
        return Err(BoundsError::Disconnected);
    }
    let n = g.order();
    let m = moore_bound_m(delta, gamma)?;
    let moore = detect_moore(g, gamma)?;
    let gi = girth(g);
    let gs = describe_girth(&gi);
    let hypotheses = applicable_hypotheses(g, gamma);
    let lambda1 = spectral_radius(g, opts.spectral_tolerance)?.lambda1;
    let tol = comparison_tolerance(n);

    let mut bounds = Vec::new();
    let mut degree_entry = |tag, value: u64, applicable, evidence: String| {
        bounds.push(BoundEntry {
            tag,
            value,
            raw: value as f64,
            strict: false,
            applicable,
            evidence,
        })
    };
    degree_entry(BoundTag::DegreeBound, m + 1, true, format!("delta={delta}"));
    degree_entry(
        BoundTag::GirthNotMoore,
        m,
        gi != Distance::Finite(2 * gamma + 1),
        format!("girth={gs}, 2*gamma+1={}", 2 * gamma + 1),
    );
    degree_entry(
        BoundTag::NonRegular,
        m - 1,
        hypotheses.contains(&Hypothesis::NonRegular),
        format!("min_degree={}, max_degree={delta}", g.min_degree()),
    );
    degree_entry(
        BoundTag::ShortGirth,
        m - 1,
        hypotheses.contains(&Hypothesis::ShortGirth),
        format!("girth={gs}, 2*gamma-1={}", 2 * gamma - 1),
    );
    let long = hypotheses.contains(&Hypothesis::LongGirthConnected);
    let long_evidence = if matches!(gi, Distance::Finite(x) if x < 2 * gamma + 2) {
        format!("girth={gs} < 2*gamma+2={}", 2 * gamma + 2)
    } else {
        format!("girth={gs}, connectivity={}", vertex_connectivity(g))
    };
    degree_entry(BoundTag::LongGirthConnected, m - 1, long, long_evidence);
    let threshold = large_degree_threshold(gamma);
    degree_entry(
        BoundTag::LargeOddDegree,
        m - 1,
        delta % 2 == 1 && delta as u64 >= threshold && !moore.is_moore,
        format!("delta={delta}, threshold={threshold}, moore={}", moore.is_moore),
    );

    let sum_raw = (lambda1.powi(gamma as i32 + 1) - 1.0) / (lambda1 - 1.0);
    bounds.push(BoundEntry {
        tag: BoundTag::SpectralSum,
        value: (sum_raw + tol).floor() as u64,
        raw: sum_raw,
        strict: false,
        applicable: true,
        evidence: format!("lambda1={lambda1:.12}"),
    });
    let power_raw = lambda1.powi(gamma as i32) + 1.0;
    let strict = gamma >= 3;
    bounds.push(BoundEntry {
        tag: BoundTag::SpectralPower,
        value: if strict {
            (power_raw - tol).ceil() as u64 - 1
        } else {
            (power_raw + tol).floor() as u64
        },
        raw: power_raw,
        strict,
        applicable: true,
        evidence: format!("lambda1={lambda1:.12}, tol={tol:e}"),
    });

    let best_bound = bounds.iter().filter(|b| b.applicable).map(|b| b.value).min().expect("degree bound applies");
    let exact_chi = if opts.skip_exact {
        ExactChi::Unknown {
            unknown: "exact solver disabled".into(),
        }
    } else {
        match chi_gamma(g, gamma, &opts.exact) {
            Ok((k, _)) => ExactChi::Known(k),
            Err(e) => ExactChi::Unknown { unknown: e.to_string() },
        }
    };
    let (violations, equality_class, moore_equality_mismatch) = match exact_chi.known() {
        Some(k) => {
            let k = k as u64;
            let v = bounds.iter().filter(|b| b.applicable && k > b.value).map(|b| b.tag).collect();
            let class = if k == m + 1 {
                EqualityClass::MooreEquality
            } else {
                EqualityClass::StrictBelow
            };
            (v, class, k == m + 1 && !moore.is_moore)
        }
        None => (Vec::new(), EqualityClass::Unknown, false),
    };
    Ok(BoundReport {
        id: id.to_string(),
        n,
        gamma,
        delta,
        m,
        lambda1,
        bounds,
        best_bound,
        exact_chi,
        equality_class,
        moore,
        violations,
        moore_equality_mismatch,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueContainmentReport {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: u64,
    /// `None` when the clique search cap was exceeded.
    pub power_clique_number: Option<usize>,
    /// `omega(G^gamma) >= M` and `n > M`; `None` if unknown.
    pub properly_contains_km: Option<bool>,
    /// `G^gamma` is exactly `K_M`.
    pub power_is_km: bool,
}

impl CliqueContainmentReport {
    pub fn violated(&self) -> bool {
        self.properly_contains_km == Some(true)
    }
}

/// For non-Moore `g`, checks that `G^gamma` has no `K_M` together with a
/// further vertex, and whether `G^gamma` is `K_M` itself.
pub fn check_clique_containment(g: &Graph, gamma: usize, clique_cap: usize) -> Result<CliqueContainmentReport, BoundsError> {
    if !is_connected(g) {
        return Err(BoundsError::Disconnected);
    }
    let cert = detect_moore(g, gamma)?;
    if cert.is_moore {
        return Err(BoundsError::MooreGraph);
    }
    let m = cert.order_expected - 1;
    let n = g.order();
    let pg = power_graph(g, gamma).expect("gamma >= 2");
    let power_is_km = n as u64 == m && pg.graph().is_complete();
    let omega = match clique_number(pg.graph(), clique_cap) {
        Ok(w) => Some(w),
        Err(CliqueError::CapExceeded { .. }) => None,
        Err(CliqueError::InvalidInput) => None,
    };
    Ok(CliqueContainmentReport {
        n,
        m,
        power_clique_number: omega,
        properly_contains_km: omega.map(|w| w as u64 >= m && n as u64 > m),
        power_is_km,
    })
}

/// Outcome of the case analysis for odd `Delta` at or above the
/// large-degree threshold, given `Delta(G^gamma)` and `chi(G^gamma)` of a
/// hypothetical graph with `chi >= M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OddDegreeVerdict {
    /// `Delta(G^gamma) = M - 1`, `chi = M`: Brooks forces `G^gamma = K_M`,
    /// so `G` is `Delta`-regular on `M` vertices with odd degree sum.
    ParityContradiction { degree_sum: u128 },
    /// `Delta(G^gamma) = M`, `chi = M`: with `M` above the threshold, a
    /// clique number below `M` would allow `M - 1` colours, so `G^gamma`
    /// contains `K_M` and has more than `M` vertices.
    CliqueContainmentContradiction,
    /// `chi = M + 1`: only Moore graphs attain the degree bound.
    MooreConclusion,
    /// `Delta` is below the threshold; no conclusion.
    BelowThreshold { threshold: u64 },
    /// Pair outside the cases permitted by Brooks' theorem with `chi >= M`.
    Infeasible,
}

/// Case analysis for odd `delta`: classifies `(Delta(G^gamma), chi)`.
pub fn odd_degree_case(
    delta: u64,
    gamma: usize,
    power_max_degree: u64,
    chi: u64,
) -> Result<OddDegreeVerdict, BoundsError> {
    if delta % 2 == 0 {
        return Err(BoundsError::EvenDegree(delta));
    }
    let d = usize::try_from(delta).map_err(|_| BoundsError::Overflow { delta: usize::MAX, gamma })?;
    let m = moore_bound_m(d, gamma)?;
    let threshold = large_degree_threshold(gamma);
    if delta < threshold {
        return Ok(OddDegreeVerdict::BelowThreshold { threshold });
    }
    // Brooks: chi <= Delta(G^gamma) + 1, and Delta(G^gamma) <= M
    if power_max_degree > m || chi > power_max_degree + 1 || chi < m {
        return Ok(OddDegreeVerdict::Infeasible);
    }
    Ok(match (power_max_degree == m, chi == m + 1) {
        (_, true) => OddDegreeVerdict::MooreConclusion,
        (false, false) => {
            let degree_sum = m as u128 * delta as u128;
            debug_assert!(degree_sum % 2 == 1);
            OddDegreeVerdict::ParityContradiction { degree_sum }
        }
        (true, false) => OddDegreeVerdict::CliqueContainmentContradiction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureStatus {
    OutOfScope,
    Holds,
    Candidate,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub id: String,
    pub graph6: String,
    pub n: usize,
    pub delta: usize,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// `Delta < 3`: not scanned.
    pub low_degree: bool,
    pub is_moore: bool,
    pub exact_chi: ExactChi,
    /// Non-Moore with `Delta >= 3` needs at most `M - 1` colours.
    pub at_most_m_minus_1: ConjectureStatus,
    /// Girth exactly `2 gamma` needs at most `M - 1` colours.
    pub girth_2gamma: ConjectureStatus,
    /// `G^gamma` is not `K_M`.
    pub power_not_km: ConjectureStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl ScanRecord {
    pub fn skipped(&self) -> bool {
        !self.low_degree && self.exact_chi.known().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub invariants: InvariantReport,
    pub strategy: Option<StrategyOutcome>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub graphs: usize,
    pub low_degree: usize,
    pub skipped: usize,
    pub m_minus_1_in_scope: usize,
    pub m_minus_1_candidates: usize,
    pub girth_2gamma_in_scope: usize,
    pub girth_2gamma_candidates: usize,
    pub power_km_candidates: usize,
}

impl ScanSummary {
    pub fn add(&mut self, r: &ScanRecord) {
        self.graphs += 1;
        self.low_degree += r.low_degree as usize;
        self.skipped += r.skipped() as usize;
        let count = |s: ConjectureStatus, scope: &mut usize, cand: &mut usize| {
            if matches!(s, ConjectureStatus::Holds | ConjectureStatus::Candidate) {
                *scope += 1;
            }
            if s == ConjectureStatus::Candidate {
                *cand += 1;
            }
        };
        count(r.at_most_m_minus_1, &mut self.m_minus_1_in_scope, &mut self.m_minus_1_candidates);
        count(r.girth_2gamma, &mut self.girth_2gamma_in_scope, &mut self.girth_2gamma_candidates);
        if r.power_not_km == ConjectureStatus::Candidate {
            self.power_km_candidates += 1;
        }
    }

    pub fn candidates(&self) -> usize {
        self.m_minus_1_candidates + self.girth_2gamma_candidates + self.power_km_candidates
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ScanReport {
    pub gamma: usize,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

/// Classifies one graph against the three `M - 1` statements.
pub fn scan_graph(id: &str, g: &Graph, gamma: usize, opts: &ExactOptions) -> Result<ScanRecord, BoundsError> {
    if gamma < 2 {
        return Err(BoundsError::InvalidGamma(gamma));
    }
    if !is_connected(g) {
        return Err(BoundsError::Disconnected);
    }
    let delta = g.max_degree();
    let mut record = ScanRecord {
        id: id.to_string(),
        graph6: encode_graph6(g),
        n: g.order(),
        delta,
        m: None,
        low_degree: delta < 3,
        is_moore: false,
        exact_chi: ExactChi::Unknown {
            unknown: "maximum degree below 3".into(),
        },
        at_most_m_minus_1: ConjectureStatus::OutOfScope,
        girth_2gamma: ConjectureStatus::OutOfScope,
        power_not_km: ConjectureStatus::OutOfScope,
        certificate: None,
    };
    if delta < 3 {
        return Ok(record);
    }
    let m = moore_bound_m(delta, gamma)?;
    let is_moore = detect_moore(g, gamma)?.is_moore;
    record.m = Some(m);
    record.is_moore = is_moore;
    let pg = power_graph(g, gamma).expect("gamma >= 2");
    let power_is_km = g.order() as u64 == m && pg.graph().is_complete();
    record.power_not_km = if power_is_km {
        ConjectureStatus::Candidate
    } else {
        ConjectureStatus::Holds
    };
    let exact: Result<usize, SolveError> = chi_gamma(g, gamma, opts).map(|(k, _)| k);
    record.exact_chi = match &exact {
        Ok(k) => ExactChi::Known(*k),
        Err(e) => ExactChi::Unknown { unknown: e.to_string() },
    };
    let status = |in_scope: bool| match (&exact, in_scope) {
        (_, false) => ConjectureStatus::OutOfScope,
        (Ok(k), true) if *k as u64 >= m => ConjectureStatus::Candidate,
        (Ok(_), true) => ConjectureStatus::Holds,
        (Err(_), true) => ConjectureStatus::Unknown,
    };
    record.at_most_m_minus_1 = status(!is_moore);
    record.girth_2gamma = status(girth(g) == Distance::Finite(2 * gamma));
    let candidate = [record.at_most_m_minus_1, record.girth_2gamma, record.power_not_km]
        .contains(&ConjectureStatus::Candidate);
    if candidate {
        record.certificate = Some(Certificate {
            invariants: InvariantReport::compute(g),
            strategy: save_color_strategy(g, gamma, opts).ok(),
        });
    }
    Ok(record)
}

/// Scans a corpus in order; disconnected inputs are reported as errors.
pub fn conjecture_scan<'a, I>(corpus: I, gamma: usize, opts: &ExactOptions) -> Result<ScanReport, BoundsError>
where
    I: IntoIterator<Item = (String, &'a Graph)>,
{
    let mut report = ScanReport {
        gamma,
        ..Default::default()
    };
    for (id, g) in corpus {
        let r = scan_graph(&id, g, gamma, opts)?;
        report.summary.add(&r);
        report.records.push(r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn m_values() {
        assert_eq!(moore_bound_m(3, 2).unwrap(), 9);
        assert_eq!(moore_bound_m(7, 2).unwrap(), 49);
        assert_eq!(moore_bound_m(3, 3).unwrap(), 21);
        assert_eq!(moore_bound_m(4, 2).unwrap(), 16);
        assert_eq!(moore_bound_m(2, 2), Err(BoundsError::DegreeTooSmall(2)));
        assert_eq!(moore_bound_m(3, 1), Err(BoundsError::InvalidGamma(1)));
        assert!(matches!(moore_bound_m(1000, 40), Err(BoundsError::Overflow { .. })));
    }

    #[test]
    fn thresholds() {
        assert_eq!(large_degree_threshold(2), 10_000_002);
        assert_eq!(large_degree_threshold(3), 46_417);
        assert_eq!(large_degree_threshold(1), 100_000_000_000_002);
    }

    #[test]
    fn moore_detection() {
        assert!(detect_moore(&petersen(), 2).unwrap().is_moore);
        assert!(detect_moore(&hoffman_singleton(), 2).unwrap().is_moore);
        let k4 = detect_moore(&complete(4), 2).unwrap();
        assert!(!k4.is_moore && !k4.checks.girth_is_2gamma_plus_1);
        assert!(!detect_moore(&petersen(), 3).unwrap().is_moore);
    }

    #[test]
    fn bound_reports() {
        let opts = BoundOptions::default();
        let pet = evaluate_bounds(&petersen(), 2, "petersen", &opts).unwrap();
        assert_eq!(pet.best_bound, 10);
        assert_eq!(pet.exact_chi, ExactChi::Known(10));
        assert_eq!(pet.equality_class, EqualityClass::MooreEquality);
        assert!(pet.is_sound());
        assert!(!pet.bound(BoundTag::GirthNotMoore).applicable);

        let k4e = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let r = evaluate_bounds(&k4e, 2, "k4-e", &opts).unwrap();
        assert!(r.bound(BoundTag::NonRegular).applicable);
        assert_eq!(r.bound(BoundTag::NonRegular).value, 8);
        assert_eq!(r.exact_chi, ExactChi::Known(4));
        assert_eq!(r.equality_class, EqualityClass::StrictBelow);
        assert!(r.is_sound());

        assert_eq!(
            evaluate_bounds(&cycle(9), 2, "c9", &opts),
            Err(BoundsError::DegreeTooSmall(2))
        );
    }

    #[test]
    fn report_json_shape() {
        let r = evaluate_bounds(&star(6), 2, "star", &BoundOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["M"], 25);
        assert_eq!(v["exact_chi"], 6);
        assert_eq!(v["bounds"][0]["tag"], "degree_bound");
        let skip = BoundOptions {
            skip_exact: true,
            ..Default::default()
        };
        let v = serde_json::to_value(evaluate_bounds(&star(6), 2, "star", &skip).unwrap()).unwrap();
        assert!(v["exact_chi"]["unknown"].is_string());
        assert_eq!(v["equality_class"], "Unknown");
    }

    #[test]
    fn clique_containment_examples() {
        let spider = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let r = check_clique_containment(&spider, 2, 200).unwrap();
        // leaf 1 and the far end 4 are at distance 3
        assert_eq!(r.power_clique_number, Some(4));
        assert!(!r.violated() && !r.power_is_km);
        let r = check_clique_containment(&complete_bipartite(3, 3), 2, 200).unwrap();
        assert_eq!(r.properly_contains_km, Some(false));
        assert_eq!(check_clique_containment(&petersen(), 2, 200), Err(BoundsError::MooreGraph));
    }

    #[test]
    fn scan_examples() {
        let opts = ExactOptions::default();
        let pet = petersen();
        let r = conjecture_scan([("petersen".to_string(), &pet)], 2, &opts).unwrap();
        assert_eq!(r.records[0].at_most_m_minus_1, ConjectureStatus::OutOfScope);
        assert_eq!(r.summary.candidates(), 0);
        let empty = conjecture_scan(std::iter::empty(), 2, &opts).unwrap();
        assert!(empty.records.is_empty());
        assert_eq!(empty.summary, ScanSummary::default());
        let c6 = cycle(6);
        let r = conjecture_scan([("c6".to_string(), &c6)], 2, &opts).unwrap();
        assert_eq!(r.summary.low_degree, 1);
        assert_eq!(r.summary.skipped, 0);
    }
}
