//! Spectral certificates: hypotheses, the bound on `μ(Ḡ)`, and the fallback
//! to exceptional-family membership at equality.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::families::{membership, Family, FamilyError, FamilyParams, FamilyWitness, DEFAULT_MEMBERSHIP_CAP};
use crate::graph::Graph;
use crate::oracles::Property;
use crate::spectral::{
    compare_to_bound, spectral_radius, BoundComparison, SpectralError, SpectralEstimate, Verdict, DEFAULT_BAND,
    DEFAULT_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    SConn,
    SEdgeConn,
    Deficient,
    PathCover,
    SHam,
    SEdgeHam,
}

impl Theorem {
    pub const ALL: [Theorem; 6] =
        [Theorem::SConn, Theorem::SEdgeConn, Theorem::Deficient, Theorem::PathCover, Theorem::SHam, Theorem::SEdgeHam];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::SConn => "s-conn",
            Theorem::SEdgeConn => "s-edge-conn",
            Theorem::Deficient => "deficient",
            Theorem::PathCover => "path-cover",
            Theorem::SHam => "s-ham",
            Theorem::SEdgeHam => "s-edge-ham",
        }
    }

    pub fn parse(s: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// Name of the second parameter: `beta` for [`Theorem::Deficient`], `s` otherwise.
    pub fn param_name(self) -> &'static str {
        if self == Theorem::Deficient {
            "beta"
        } else {
            "s"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{theorem} requires {condition}")]
    OutOfRange { theorem: &'static str, condition: &'static str },
}

/// A theorem together with its minimum-degree parameter `k` and its second
/// parameter (`s`, or `β` for [`Theorem::Deficient`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremParams {
    pub theorem: Theorem,
    pub k: usize,
    pub param: usize,
}

impl TheoremParams {
    pub fn new(theorem: Theorem, k: usize, param: usize) -> Self {
        TheoremParams { theorem, k, param }
    }

    /// Parameter conditions as `(description, required, observed)`, read as `observed >= required`.
    fn range_checks(&self) -> Vec<(&'static str, i64, i64)> {
        let (k, p) = (self.k as i64, self.param as i64);
        match self.theorem {
            Theorem::SConn | Theorem::SEdgeConn => vec![("s >= 1", 1, p), ("k >= 1", 1, k), ("k - s + 1 >= 0", 0, k - p + 1)],
            Theorem::Deficient => vec![("k >= 1", 1, k), ("k - 2*beta >= 0", 0, k - 2 * p)],
            Theorem::PathCover => vec![("s >= 1", 1, p), ("k >= 1", 1, k)],
            Theorem::SHam | Theorem::SEdgeHam => vec![("k - s >= 1", 1, k - p)],
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match self.range_checks().into_iter().find(|&(_, req, obs)| obs < req) {
            Some((condition, _, _)) => Err(ParamError::OutOfRange { theorem: self.theorem.name(), condition }),
            None => Ok(()),
        }
    }

    /// Smallest order the theorem admits.
    pub fn min_order(&self) -> usize {
        match self.theorem {
            Theorem::SConn | Theorem::SEdgeConn | Theorem::SHam | Theorem::SEdgeHam => 2 * self.k + 1,
            Theorem::Deficient => 2 * self.k + self.param + 2,
            Theorem::PathCover => 2 * self.k + self.param + 1,
        }
    }

    /// Whether the parameters are in range and admit graphs of order `n`.
    pub fn applies_to_order(&self, n: usize) -> bool {
        self.validate().is_ok()
            && n >= self.min_order()
            && (self.theorem != Theorem::Deficient || n % 2 == self.param % 2)
    }

    /// The value under the square root in the bound on `μ(Ḡ)`.
    pub fn radicand(&self, n: usize) -> i64 {
        let (n, k, p) = (n as i64, self.k as i64, self.param as i64);
        let factor = match self.theorem {
            Theorem::SConn | Theorem::SEdgeConn => k - p + 2,
            Theorem::Deficient => p + k + 1,
            Theorem::PathCover => k + p,
            Theorem::SHam | Theorem::SEdgeHam => k - p,
        };
        factor * (n - k - 1)
    }

    /// The property the theorem concludes.
    pub fn property(&self) -> Property {
        match self.theorem {
            Theorem::SConn => Property::SConnected(self.param),
            Theorem::SEdgeConn => Property::SEdgeConnected(self.param),
            Theorem::Deficient => Property::BetaDeficient(self.param),
            Theorem::PathCover => Property::SPathCoverable(self.param),
            Theorem::SHam => Property::SHamiltonian(self.param),
            Theorem::SEdgeHam => Property::SEdgeHamiltonian(self.param),
        }
    }

    /// Exceptional families to search at equality, in order.
    pub fn families(&self) -> Vec<Family> {
        match self.theorem {
            Theorem::SConn | Theorem::SEdgeConn => vec![Family::EP, Family::EC],
            Theorem::Deficient if self.param == 0 => vec![Family::UnionCliques, Family::EP],
            Theorem::PathCover if self.param == 1 => vec![Family::UnionCliques, Family::EP],
            Theorem::Deficient | Theorem::PathCover => vec![Family::EP],
            Theorem::SHam | Theorem::SEdgeHam => vec![Family::EP, Family::ES],
        }
    }

    /// Every parameter choice of `theorems` that applies to order `n`.
    pub fn all_for_order(n: usize, theorems: &[Theorem]) -> Vec<TheoremParams> {
        let mut out = Vec::new();
        for &theorem in theorems {
            for k in 0..n {
                for param in 0..=n {
                    let p = TheoremParams::new(theorem, k, param);
                    if p.applies_to_order(n) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub required: i64,
    pub observed: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn check(name: &'static str, relation: Relation, required: i64, observed: i64) -> HypothesisCheck {
    let pass = match relation {
        Relation::AtLeast => observed >= required,
        Relation::Equals => observed == required,
    };
    HypothesisCheck { name, relation, required, observed, pass }
}

/// Evaluates every hypothesis of `params.theorem` on `g`. With
/// `relax_connectivity` the connectivity check is left out.
pub fn check_hypotheses(g: &Graph, params: &TheoremParams, relax_connectivity: bool) -> HypothesisReport {
    let n = g.order() as i64;
    let mut checks: Vec<HypothesisCheck> =
        params.range_checks().into_iter().map(|(name, req, obs)| check(name, Relation::AtLeast, req, obs)).collect();
    let order_name = match params.theorem {
        Theorem::Deficient => "n >= 2k + beta + 2",
        Theorem::PathCover => "n >= 2k + s + 1",
        _ => "n >= 2k + 1",
    };
    checks.push(check(order_name, Relation::AtLeast, params.min_order() as i64, n));
    if params.theorem == Theorem::Deficient {
        checks.push(check("n = beta (mod 2)", Relation::Equals, params.param as i64 % 2, n % 2));
    }
    if !relax_connectivity {
        checks.push(check("connected", Relation::Equals, 1, g.is_connected() as i64));
    }
    let delta = g.min_degree().map_or(0, |d| d as i64);
    checks.push(check("min degree >= k", Relation::AtLeast, params.k as i64, delta));
    HypothesisReport { checks }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub tol: f64,
    pub band: f64,
    pub relax_connectivity: bool,
    pub membership_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { tol: DEFAULT_TOL, band: DEFAULT_BAND, relax_connectivity: false, membership_cap: DEFAULT_MEMBERSHIP_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertStatus {
    HypothesisUnmet,
    Certified,
    Exceptional,
    Inconclusive,
    BoundaryUnknown,
}

impl CertStatus {
    pub fn name(self) -> &'static str {
        match self {
            CertStatus::HypothesisUnmet => "HypothesisUnmet",
            CertStatus::Certified => "Certified",
            CertStatus::Exceptional => "Exceptional",
            CertStatus::Inconclusive => "Inconclusive",
            CertStatus::BoundaryUnknown => "BoundaryUnknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertOutcome {
    pub status: CertStatus,
    pub params: TheoremParams,
    /// `μ(Ḡ)`; absent when the hypotheses fail before it is needed.
    pub mu: Option<SpectralEstimate>,
    pub comparison: Option<BoundComparison>,
    pub radicand: i64,
    pub witness: Option<FamilyWitness>,
    pub report: HypothesisReport,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `μ(Ḡ)` computed on first use and reused across parameterizations.
pub struct ComplementSpectrum<'a> {
    g: &'a Graph,
    tol: f64,
    value: Option<Result<SpectralEstimate, SpectralError>>,
}

impl<'a> ComplementSpectrum<'a> {
    pub fn new(g: &'a Graph, tol: f64) -> Self {
        ComplementSpectrum { g, tol, value: None }
    }

    pub fn get(&mut self) -> Result<SpectralEstimate, SpectralError> {
        let (g, tol) = (self.g, self.tol);
        self.value.get_or_insert_with(|| spectral_radius(&g.complement(), tol)).clone()
    }
}

pub fn certify(g: &Graph, params: &TheoremParams, options: &CertifyOptions) -> Result<CertOutcome, CertifyError> {
    certify_cached(g, params, options, &mut ComplementSpectrum::new(g, options.tol))
}

/// [`certify`] with a shared spectrum cache; `spectrum` must belong to `g`
/// and use `options.tol`.
pub fn certify_cached(
    g: &Graph,
    params: &TheoremParams,
    options: &CertifyOptions,
    spectrum: &mut ComplementSpectrum<'_>,
) -> Result<CertOutcome, CertifyError> {
    let n = g.order();
    let report = check_hypotheses(g, params, options.relax_connectivity);
    let radicand = params.radicand(n);
    let mut outcome = CertOutcome {
        status: CertStatus::HypothesisUnmet,
        params: *params,
        mu: None,
        comparison: None,
        radicand,
        witness: None,
        report,
    };
    if !outcome.report.pass() {
        return Ok(outcome);
    }
    let mu = spectrum.get()?;
    let cmp = compare_to_bound(&mu, radicand, options.band);
    outcome.mu = Some(mu);
    outcome.comparison = Some(cmp);
    outcome.status = match cmp.verdict {
        Verdict::Below => CertStatus::Certified,
        Verdict::Above => CertStatus::Inconclusive,
        Verdict::Equal => {
            let fp = FamilyParams::new(params.k, params.param);
            let mut status = CertStatus::Certified;
            for family in params.families() {
                match membership(g, family, fp, options.membership_cap) {
                    Ok(Some(w)) => {
                        outcome.witness = Some(w);
                        status = CertStatus::Exceptional;
                        break;
                    }
                    Ok(None) => {}
                    Err(FamilyError::CapExceeded { .. }) => status = CertStatus::BoundaryUnknown,
                    Err(_) => {}
                }
            }
            status
        }
    };
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_ep, gen_union_cliques, validate_witness};

    #[test]
    fn radicands() {
        assert_eq!(TheoremParams::new(Theorem::SConn, 4, 1).radicand(9), 20);
        assert_eq!(TheoremParams::new(Theorem::Deficient, 4, 0).radicand(10), 25);
        assert_eq!(TheoremParams::new(Theorem::SHam, 2, 0).radicand(6), 6);
        assert_eq!(TheoremParams::new(Theorem::PathCover, 2, 1).radicand(8), 15);
    }

    #[test]
    fn parameter_ranges() {
        assert!(TheoremParams::new(Theorem::SConn, 2, 3).validate().is_ok());
        assert!(TheoremParams::new(Theorem::SConn, 2, 4).validate().is_err());
        assert!(TheoremParams::new(Theorem::SConn, 2, 0).validate().is_err());
        assert!(TheoremParams::new(Theorem::Deficient, 3, 2).validate().is_err());
        assert!(TheoremParams::new(Theorem::SHam, 1, 1).validate().is_err());
        assert!(TheoremParams::new(Theorem::SHam, 1, 0).validate().is_ok());
        assert!(TheoremParams::new(Theorem::PathCover, 0, 1).validate().is_err());
    }

    #[test]
    fn parameterizations_at_order_seven() {
        let all = TheoremParams::all_for_order(7, &Theorem::ALL);
        let count = |t| all.iter().filter(|p| p.theorem == t).count();
        assert_eq!(
            Theorem::ALL.map(count),
            [9, 9, 1, 6, 6, 6]
        );
    }

    #[test]
    fn hypothesis_examples() {
        let p = TheoremParams::new(Theorem::SConn, 4, 1);
        assert!(check_hypotheses(&Graph::complete(9), &p, false).pass());
        let g = gen_union_cliques(10, 4).unwrap();
        let p = TheoremParams::new(Theorem::Deficient, 4, 0);
        let strict = check_hypotheses(&g, &p, false);
        assert_eq!(strict.failures().map(|c| c.name).collect::<Vec<_>>(), vec!["connected"]);
        assert!(check_hypotheses(&g, &p, true).pass());
        let c6 = Graph::cycle(6).unwrap();
        assert!(check_hypotheses(&c6, &TheoremParams::new(Theorem::SHam, 2, 0), false).pass());
        let odd = check_hypotheses(&Graph::complete(11), &p, false);
        assert_eq!(odd.failures().map(|c| c.name).collect::<Vec<_>>(), vec!["n = beta (mod 2)"]);
    }

    #[test]
    fn certify_examples() {
        let opts = CertifyOptions::default();
        let out = certify(&Graph::complete(9), &TheoremParams::new(Theorem::SConn, 4, 1), &opts).unwrap();
        assert_eq!(out.status, CertStatus::Certified);
        assert_eq!(out.mu.unwrap().value, 0.0);

        let g = gen_union_cliques(10, 4).unwrap();
        let p = TheoremParams::new(Theorem::Deficient, 4, 0);
        assert_eq!(certify(&g, &p, &opts).unwrap().status, CertStatus::HypothesisUnmet);
        let relaxed = CertifyOptions { relax_connectivity: true, ..opts };
        let out = certify(&g, &p, &relaxed).unwrap();
        assert_eq!(out.status, CertStatus::Exceptional);
        let w = out.witness.unwrap();
        assert_eq!(w.family, Family::UnionCliques);
        assert!(validate_witness(&g, &w, FamilyParams::new(4, 0)));

        let out = certify(&Graph::cycle(6).unwrap(), &TheoremParams::new(Theorem::SHam, 2, 0), &opts).unwrap();
        assert_eq!(out.status, CertStatus::Inconclusive);
        assert!((out.mu.unwrap().value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn ep_instance_is_exceptional() {
        let g = gen_ep(6, 2, 0, Some(&Graph::empty(4)), Some(&Graph::complete(2))).unwrap();
        let out = certify(&g, &TheoremParams::new(Theorem::SConn, 2, 1), &CertifyOptions::default()).unwrap();
        assert_eq!(out.status, CertStatus::Exceptional);
        assert_eq!(out.witness.unwrap().family, Family::EP);
    }

    #[test]
    fn cap_overflow_is_boundary_unknown() {
        let g = gen_ep(6, 2, 0, Some(&Graph::empty(4)), Some(&Graph::complete(2))).unwrap();
        let opts = CertifyOptions { membership_cap: 5, ..CertifyOptions::default() };
        let out = certify(&g, &TheoremParams::new(Theorem::SConn, 2, 1), &opts).unwrap();
        assert_eq!(out.status, CertStatus::BoundaryUnknown);
    }

    #[test]
    fn certify_is_deterministic() {
        let g = Graph::cycle(7).unwrap();
        let p = TheoremParams::new(Theorem::PathCover, 2, 1);
        let opts = CertifyOptions::default();
        assert_eq!(certify(&g, &p, &opts), certify(&g, &p, &opts));
    }
}
