//! Desk-scale validation: graph sources, soundness sweeps, closure and
//! eigenvalue-bound suites, and equality-case searches.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use specert_core::certify::{certify_cached, CertStatus, CertifyOptions, ComplementSpectrum, Theorem, TheoremParams};
use specert_core::closure::{closure_parameter, k_closure};
use specert_core::families::{self, Family};
use specert_core::graph::{pair_count, pairs, Graph};
use specert_core::oracles::{self, OracleError, OracleVerdict, Property};
use specert_core::spectral::{compare_to_bound, min_edge_geometric_degree, spectral_radius, Verdict};
use thiserror::Error;

use crate::format::to_graph6;
use crate::record::{cert_record, Record};

/// Largest order enumerated exhaustively.
pub const EXHAUSTIVE_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_ORDER}, got {0}")]
    TooLarge(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("no family instance realises the bound for these parameters: {0}")]
    Infeasible(String),
}

/// Every labeled graph on `n` vertices, in increasing edge-mask order
/// (bit `i` is the `i`-th pair in graph6 column order).
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>, HarnessError> {
    labeled_count(n).map(|count| (0..count).map(move |mask| Graph::from_pair_mask(n, mask)))
}

/// Parallel form of [`enumerate_labeled`], same order.
pub fn enumerate_labeled_par(n: usize) -> Result<impl IndexedParallelIterator<Item = Graph>, HarnessError> {
    labeled_count(n).map(|count| (0..count as u32).into_par_iter().map(move |mask| Graph::from_pair_mask(n, u64::from(mask))))
}

fn labeled_count(n: usize) -> Result<u64, HarnessError> {
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(HarnessError::TooLarge(n));
    }
    Ok(1u64 << pair_count(n))
}

/// `count` Erdős–Rényi graphs `G(n, p)`; the stream depends only on `seed`.
pub fn sample_gnp(n: usize, p: f64, seed: u64, count: usize) -> Result<impl Iterator<Item = Graph>, HarnessError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(HarnessError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |_| gnp(n, p, &mut rng)))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for (u, v) in pairs(n) {
        if rng.random_bool(p) {
            g.add_edge(u, v).expect("pair is in range");
        }
    }
    g
}

/// Samples with order drawn from `orders` and edge probability from
/// `[p_low, p_high]`, both per graph.
pub fn sample_mixed(orders: std::ops::RangeInclusive<usize>, p_low: f64, p_high: f64, seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(orders.clone());
            let p = rng.random_range(p_low..=p_high);
            gnp(n, p, &mut rng)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Soundness sweep

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub theorems: Vec<Theorem>,
    pub k_max: Option<usize>,
    pub options: CertifyOptions,
    /// Re-check every negative oracle verdict and every family witness.
    pub verify_witnesses: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { theorems: Theorem::ALL.to_vec(), k_max: None, options: CertifyOptions::default(), verify_witnesses: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub graph6: String,
    pub params: TheoremParams,
    pub status: CertStatus,
    pub oracle: OracleVerdict,
}

/// Oracle outcome on a family member, for equality-case analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalEntry {
    pub index: usize,
    pub graph6: String,
    pub params: TheoremParams,
    pub family: Family,
    pub property_holds: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepReport {
    pub graphs_examined: usize,
    pub parameterizations_examined: usize,
    pub certified: usize,
    pub exceptional: usize,
    pub inconclusive: usize,
    pub hypothesis_unmet: usize,
    pub boundary_unknown: usize,
    /// Parameterizations where the spectral computation failed.
    pub spectral_errors: usize,
    /// Oracle calls rejected by a size cap.
    pub oracle_errors: usize,
    pub witnesses_checked: usize,
    pub witness_failures: Vec<String>,
    pub violations: Vec<Violation>,
    pub exceptional_log: Vec<ExceptionalEntry>,
    pub wall_time: Duration,
}

impl SweepReport {
    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.graphs_examined += other.graphs_examined;
        self.parameterizations_examined += other.parameterizations_examined;
        self.certified += other.certified;
        self.exceptional += other.exceptional;
        self.inconclusive += other.inconclusive;
        self.hypothesis_unmet += other.hypothesis_unmet;
        self.boundary_unknown += other.boundary_unknown;
        self.spectral_errors += other.spectral_errors;
        self.oracle_errors += other.oracle_errors;
        self.witnesses_checked += other.witnesses_checked;
        self.witness_failures.extend(other.witness_failures);
        self.violations.extend(other.violations);
        self.exceptional_log.extend(other.exceptional_log);
        self
    }

    /// The status counts (spectral failures included) sum to the number of parameterizations.
    pub fn counts_consistent(&self) -> bool {
        self.certified + self.exceptional + self.inconclusive + self.hypothesis_unmet + self.boundary_unknown + self.spectral_errors
            == self.parameterizations_examined
    }

    pub fn summary(&self) -> Record {
        Record::new()
            .with("graphs", self.graphs_examined)
            .with("parameterizations", self.parameterizations_examined)
            .with("certified", self.certified)
            .with("exceptional", self.exceptional)
            .with("inconclusive", self.inconclusive)
            .with("hypothesis_unmet", self.hypothesis_unmet)
            .with("boundary_unknown", self.boundary_unknown)
            .with("spectral_errors", self.spectral_errors)
            .with("oracle_errors", self.oracle_errors)
            .with("witnesses_checked", self.witnesses_checked)
            .with("witness_failures", self.witness_failures.len())
            .with("violations", self.violations.len())
            .with("wall_time_s", format!("{:.3}", self.wall_time.as_secs_f64()))
    }
}

/// Oracle verdicts computed so far for one graph.
struct OracleCache {
    entries: Vec<(Property, Result<OracleVerdict, OracleError>)>,
}

impl OracleCache {
    fn get(&mut self, g: &Graph, p: Property, report: &mut SweepReport, verify: bool, graph6: &str) -> Option<OracleVerdict> {
        if let Some((_, v)) = self.entries.iter().find(|(q, _)| *q == p) {
            return v.as_ref().ok().cloned();
        }
        let v = oracles::decide(g, p);
        match &v {
            Ok(verdict) if verify && !verdict.holds => {
                report.witnesses_checked += 1;
                if oracles::verify_verdict(g, p, verdict) != Ok(true) {
                    report.witness_failures.push(format!("{graph6} {p:?} {verdict:?}"));
                }
            }
            Err(_) => report.oracle_errors += 1,
            _ => {}
        }
        self.entries.push((p, v.clone()));
        v.ok()
    }
}

fn sweep_graph(index: usize, g: &Graph, config: &SweepConfig) -> SweepReport {
    let mut report = SweepReport { graphs_examined: 1, ..SweepReport::default() };
    let params: Vec<TheoremParams> = TheoremParams::all_for_order(g.order(), &config.theorems)
        .into_iter()
        .filter(|p| config.k_max.is_none_or(|k| p.k <= k))
        .collect();
    let mut spectrum = ComplementSpectrum::new(g, config.options.tol);
    let mut cache = OracleCache { entries: Vec::new() };
    let mut graph6 = None;
    for p in params {
        report.parameterizations_examined += 1;
        let outcome = match certify_cached(g, &p, &config.options, &mut spectrum) {
            Ok(o) => o,
            Err(_) => {
                report.spectral_errors += 1;
                continue;
            }
        };
        match outcome.status {
            CertStatus::HypothesisUnmet => report.hypothesis_unmet += 1,
            CertStatus::Inconclusive => report.inconclusive += 1,
            CertStatus::BoundaryUnknown => report.boundary_unknown += 1,
            CertStatus::Certified => {
                report.certified += 1;
                let g6 = graph6.get_or_insert_with(|| to_graph6(g)).clone();
                if let Some(v) = cache.get(g, p.property(), &mut report, config.verify_witnesses, &g6) {
                    if !v.holds {
                        report.violations.push(Violation { index, graph6: g6, params: p, status: outcome.status, oracle: v });
                    }
                }
            }
            CertStatus::Exceptional => {
                report.exceptional += 1;
                let g6 = graph6.get_or_insert_with(|| to_graph6(g)).clone();
                let w = outcome.witness.expect("exceptional outcomes carry a witness");
                if config.verify_witnesses {
                    report.witnesses_checked += 1;
                    if !families::validate_witness(g, &w, families::FamilyParams::new(p.k, p.param)) {
                        report.witness_failures.push(format!("{g6} {p:?} {w:?}"));
                    }
                }
                let holds = cache.get(g, p.property(), &mut report, config.verify_witnesses, &g6).map(|v| v.holds);
                report.exceptional_log.push(ExceptionalEntry { index, graph6: g6, params: p, family: w.family, property_holds: holds });
            }
        }
    }
    report
}

/// Certifies every graph under every applicable parameterization and checks
/// each certificate against the exact oracle.
pub fn soundness_sweep<I>(graphs: I, config: &SweepConfig) -> SweepReport
where
    I: IndexedParallelIterator<Item = Graph>,
{
    let start = Instant::now();
    let mut report = graphs
        .enumerate()
        .map(|(i, g)| sweep_graph(i, &g, config))
        .reduce(SweepReport::default, SweepReport::merge);
    report.violations.sort_by_key(|v| (v.index, v.params));
    report.exceptional_log.sort_by_key(|e| (e.index, e.params));
    report.witness_failures.sort();
    report.wall_time = start.elapsed();
    report
}

/// One record per violation, then the summary.
pub fn report_lines(report: &SweepReport) -> Vec<String> {
    let mut out: Vec<String> = report
        .violations
        .iter()
        .map(|v| {
            Record::new()
                .with("violation", &v.graph6)
                .with("theorem", v.params.theorem.name())
                .with("k", v.params.k)
                .with("s_or_beta", v.params.param)
                .with("status", v.status.name())
                .with("oracle_holds", v.oracle.holds)
                .to_string()
        })
        .collect();
    for e in &report.exceptional_log {
        out.push(
            Record::new()
                .with("exceptional", &e.graph6)
                .with("theorem", e.params.theorem.name())
                .with("k", e.params.k)
                .with("s_or_beta", e.params.param)
                .with("family", e.family.name())
                .with("oracle_holds", e.property_holds.map_or("NA".to_string(), |h| h.to_string()))
                .to_string(),
        );
    }
    out.push(report.summary().to_string());
    out
}

// ---------------------------------------------------------------------------
// Closure equivalence

/// Properties checked against the closure on `n` vertices: every `s` from 1
/// to `n` for connectivity and path covers, `β` with `β ≡ n (mod 2)`,
/// `s <= n − 3` for `s`-Hamiltonicity (beyond that both sides are false) and
/// `s <= edge_ham_max` for `s`-edge-Hamiltonicity.
pub fn closure_properties(n: usize, edge_ham_max: usize) -> Vec<Property> {
    let mut props = Vec::new();
    for s in 1..=n {
        props.push(Property::SConnected(s));
        if n >= 2 {
            props.push(Property::SEdgeConnected(s));
        }
        props.push(Property::SPathCoverable(s));
    }
    props.extend((0..=n).filter(|b| b % 2 == n % 2).map(Property::BetaDeficient));
    props.extend((0..=n.saturating_sub(3)).map(Property::SHamiltonian));
    props.extend((0..=edge_ham_max).map(Property::SEdgeHamiltonian));
    props
}

fn closure_k(p: Property, n: usize) -> usize {
    let (theorem, param) = match p {
        Property::SConnected(s) => (Theorem::SConn, s),
        Property::SEdgeConnected(s) => (Theorem::SEdgeConn, s),
        Property::BetaDeficient(b) => (Theorem::Deficient, b),
        Property::SPathCoverable(s) => (Theorem::PathCover, s),
        Property::SHamiltonian(s) => (Theorem::SHam, s),
        Property::SEdgeHamiltonian(s) => (Theorem::SEdgeHam, s),
    };
    closure_parameter(&TheoremParams::new(theorem, 0, param), n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureMismatch {
    pub graph6: String,
    pub property: Property,
    pub graph_holds: bool,
    pub closure_holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClosureReport {
    pub graphs: usize,
    pub comparisons: usize,
    /// Comparisons where the closure added no edge.
    pub trivial: usize,
    pub oracle_errors: usize,
    pub mismatches: Vec<ClosureMismatch>,
}

impl ClosureReport {
    fn merge(mut self, o: ClosureReport) -> ClosureReport {
        self.graphs += o.graphs;
        self.comparisons += o.comparisons;
        self.trivial += o.trivial;
        self.oracle_errors += o.oracle_errors;
        self.mismatches.extend(o.mismatches);
        self
    }
}

fn closure_graph(g: &Graph, edge_ham_max: usize) -> ClosureReport {
    let n = g.order();
    let mut report = ClosureReport { graphs: 1, ..ClosureReport::default() };
    for p in closure_properties(n, edge_ham_max) {
        report.comparisons += 1;
        let closed = k_closure(g, closure_k(p, n)).closed;
        if closed == *g {
            report.trivial += 1;
            continue;
        }
        match (oracles::decide(g, p), oracles::decide(&closed, p)) {
            (Ok(a), Ok(b)) => {
                if a.holds != b.holds {
                    report.mismatches.push(ClosureMismatch { graph6: to_graph6(g), property: p, graph_holds: a.holds, closure_holds: b.holds });
                }
            }
            _ => report.oracle_errors += 1,
        }
    }
    report
}

/// Checks that each property holds for `G` exactly when it holds for its
/// closure under the matching parameter.
pub fn closure_equivalence<I>(graphs: I, edge_ham_max: usize) -> ClosureReport
where
    I: ParallelIterator<Item = Graph>,
{
    let mut r = graphs.map(|g| closure_graph(&g, edge_ham_max)).reduce(ClosureReport::default, ClosureReport::merge);
    r.mismatches.sort_by(|a, b| a.graph6.cmp(&b.graph6).then(format!("{:?}", a.property).cmp(&format!("{:?}", b.property))));
    r
}

// ---------------------------------------------------------------------------
// Edge-degree bound on the spectral radius

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeBoundReport {
    pub graphs: usize,
    pub equality_cases: usize,
    pub inequality_failures: Vec<String>,
    pub characterization_mismatches: Vec<String>,
}

impl EdgeBoundReport {
    fn merge(mut self, o: EdgeBoundReport) -> EdgeBoundReport {
        self.graphs += o.graphs;
        self.equality_cases += o.equality_cases;
        self.inequality_failures.extend(o.inequality_failures);
        self.characterization_mismatches.extend(o.characterization_mismatches);
        self
    }
}

/// On connected graphs with an edge: `μ(G) >= min √(d(u)d(v))` within `eps`,
/// with equality exactly for regular or semi-regular bipartite graphs.
pub fn edge_bound_suite<I>(graphs: I, eps: f64) -> EdgeBoundReport
where
    I: ParallelIterator<Item = Graph>,
{
    graphs
        .filter(|g| g.order() >= 2 && g.is_connected())
        .map(|g| {
            let mut r = EdgeBoundReport { graphs: 1, ..EdgeBoundReport::default() };
            let mu = spectral_radius(&g, 1e-12).map(|e| e.value);
            let bound = min_edge_geometric_degree(&g);
            let (Ok(mu), Ok(bound)) = (mu, bound) else {
                r.inequality_failures.push(to_graph6(&g));
                return r;
            };
            if mu < bound - eps {
                r.inequality_failures.push(to_graph6(&g));
            }
            let equal = (mu - bound).abs() <= eps;
            let structural = g.is_regular().is_some() || g.semiregular_bipartition().is_some();
            if equal {
                r.equality_cases += 1;
            }
            if equal != structural {
                r.characterization_mismatches.push(to_graph6(&g));
            }
            r
        })
        .reduce(EdgeBoundReport::default, EdgeBoundReport::merge)
}

// ---------------------------------------------------------------------------
// Implication chains

/// Counterexamples to `s`-connected ⟹ `s`-edge-connected and
/// `s`-Hamiltonian ⟹ `s`-edge-Hamiltonian for `s <= s_max`.
pub fn implication_counterexamples<I>(graphs: I, s_max: usize) -> (usize, Vec<(String, Property)>)
where
    I: ParallelIterator<Item = Graph>,
{
    graphs
        .map(|g| {
            let mut checked = 0;
            let mut bad = Vec::new();
            if g.order() < 2 {
                return (0, bad);
            }
            for s in 0..=s_max {
                let pairs = [
                    (Property::SConnected(s), Property::SEdgeConnected(s)),
                    (Property::SHamiltonian(s), Property::SEdgeHamiltonian(s)),
                ];
                for (a, b) in pairs {
                    checked += 1;
                    let premise = oracles::decide(&g, a).map(|v| v.holds);
                    if premise == Ok(true) && oracles::decide(&g, b).map(|v| v.holds) != Ok(true) {
                        bad.push((to_graph6(&g), a));
                    }
                }
            }
            (checked, bad)
        })
        .reduce(|| (0, Vec::new()), |mut a, b| {
            a.0 += b.0;
            a.1.extend(b.1);
            a
        })
}

// ---------------------------------------------------------------------------
// Witness audit

#[derive(Debug, Clone, Default, PartialEq)]
pub struct WitnessAudit {
    pub negative_verdicts: usize,
    pub failures: Vec<(String, Property)>,
    pub oracle_errors: usize,
}

/// Re-checks the witness of every negative verdict of `properties(n)` on each graph.
pub fn witness_audit<I, F>(graphs: I, properties: F) -> WitnessAudit
where
    I: ParallelIterator<Item = Graph>,
    F: Fn(usize) -> Vec<Property> + Sync,
{
    graphs
        .map(|g| {
            let mut a = WitnessAudit::default();
            for p in properties(g.order()) {
                match oracles::decide(&g, p) {
                    Ok(v) if !v.holds => {
                        a.negative_verdicts += 1;
                        if oracles::verify_verdict(&g, p, &v) != Ok(true) {
                            a.failures.push((to_graph6(&g), p));
                        }
                    }
                    Ok(_) => {}
                    Err(_) => a.oracle_errors += 1,
                }
            }
            a
        })
        .reduce(WitnessAudit::default, |mut a, b| {
            a.negative_verdicts += b.negative_verdicts;
            a.failures.extend(b.failures);
            a.oracle_errors += b.oracle_errors;
            a
        })
}

// ---------------------------------------------------------------------------
// Tightness

#[derive(Debug, Clone, PartialEq)]
pub struct TightInstance {
    pub graph: Graph,
    pub family: Family,
    pub mu: f64,
    pub radicand: i64,
}

fn family_candidates(family: Family, n: usize, params: &TheoremParams) -> Vec<Graph> {
    let (k, p) = (params.k, params.param);
    let mut out = Vec::new();
    match family {
        Family::EP => {
            for r in 0..=k {
                for g2 in [None, Some(Graph::empty(k.saturating_sub(r)))] {
                    if let Ok(g) = families::gen_ep(n, k, r, None, g2.as_ref()) {
                        out.push(g);
                    }
                }
            }
        }
        Family::EC | Family::ES => {
            for m in 0..=p + 1 {
                for t in 0..=p + 1 - m {
                    let made = if family == Family::EC {
                        families::gen_ec(n, k, p, m, t, None, None)
                    } else {
                        families::gen_es(n, k, p, m, t, None, None)
                    };
                    if let Ok(g) = made {
                        out.push(g);
                    }
                }
            }
        }
        Family::UnionCliques => {
            if let Ok(g) = families::gen_union_cliques(n, k) {
                out.push(g);
            }
        }
    }
    out
}

/// Family instances on `n` vertices whose complement attains the bound of
/// `params` within `band`.
pub fn tightness_search(params: &TheoremParams, n: usize, band: f64) -> Result<Vec<TightInstance>, HarnessError> {
    let radicand = params.radicand(n);
    let mut out: Vec<TightInstance> = Vec::new();
    for family in params.families() {
        for g in family_candidates(family, n, params) {
            if out.iter().any(|t| t.graph == g) {
                continue;
            }
            let Ok(est) = spectral_radius(&g.complement(), 1e-12) else { continue };
            if compare_to_bound(&est, radicand, band).verdict == Verdict::Equal {
                out.push(TightInstance { graph: g, family, mu: est.value, radicand });
            }
        }
    }
    if out.is_empty() {
        return Err(HarnessError::Infeasible(format!("{} n={n} k={} {}={}", params.theorem.name(), params.k, params.theorem.param_name(), params.param)));
    }
    Ok(out)
}

pub fn tight_record(t: &TightInstance) -> Record {
    Record::new()
        .with("graph6", to_graph6(&t.graph))
        .with("family", t.family.name())
        .with("mu", format!("{:.12}", t.mu))
        .with("radicand", t.radicand)
}

/// Certifies each graph and returns one record per outcome.
pub fn certify_records(graphs: &[Graph], params: &TheoremParams, options: &CertifyOptions) -> Vec<String> {
    graphs
        .iter()
        .map(|g| match specert_core::certify::certify(g, params, options) {
            Ok(o) => cert_record(&o).to_string(),
            Err(e) => Record::new().with("status", "Error").with("error", e).to_string(),
        })
        .collect()
}
