//! The exceptional families EP, EC, ES and the two-clique union: generators
//! and membership tests.
//!
//! Every family member is a join `core ∨ G₂` (or a disjoint union for
//! [`Family::UnionCliques`]), so in the complement the core is a union of
//! whole components. Membership is decided by looking at those components.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{pairs, Graph};

pub const DEFAULT_MEMBERSHIP_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    EP,
    EC,
    ES,
    UnionCliques,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::EP => "EP",
            Family::EC => "EC",
            Family::ES => "ES",
            Family::UnionCliques => "UnionCliques",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "ep" => Some(Family::EP),
            "ec" => Some(Family::EC),
            "es" => Some(Family::ES),
            "unioncliques" | "union-cliques" | "union" => Some(Family::UnionCliques),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{what}: expected {expected} vertices, got {got}")]
    WrongOrder { what: &'static str, expected: usize, got: usize },
    #[error("core graph is not {0}-regular")]
    NotRegular(usize),
    #[error("no {degree}-regular circulant on {order} vertices")]
    NoCirculant { order: usize, degree: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(&'static str),
    #[error("graph is not semi-regular bipartite with the required sides")]
    NotBiregular,
    #[error("edge mask selects a pair outside the {0}-vertex join part")]
    BadEdgeMask(usize),
    #[error("membership search limited to {cap} vertices, graph has {order}")]
    CapExceeded { cap: usize, order: usize },
}

/// A decomposition exhibiting family membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyWitness {
    pub family: Family,
    pub core_part: Vec<usize>,
    pub join_part: Vec<usize>,
    pub r: usize,
    pub m: usize,
    pub t: usize,
    /// `(X, Y)` sides of the bipartite complement of the core (EC and ES only).
    pub sides: Option<(Vec<usize>, Vec<usize>)>,
}

/// Family parameters: `k` always, `s` for EC and ES.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub k: usize,
    pub s: usize,
}

impl FamilyParams {
    pub fn new(k: usize, s: usize) -> Self {
        FamilyParams { k, s }
    }
}

/// Side degrees `(deg_x, deg_y)` and the largest allowed `r` for the bipartite
/// families, or `None` when they are undefined for these parameters.
fn bipartite_shape(family: Family, n: usize, p: FamilyParams) -> Option<(usize, usize, usize)> {
    let (n, k, s) = (n as i64, p.k as i64, p.s as i64);
    let (deg_x, max_r) = match family {
        Family::EC => (k - s + 2, s - 1),
        Family::ES => (k - s, s + 1),
        _ => return None,
    };
    let deg_y = n - k - 1;
    (deg_x >= 1 && deg_y >= 1 && max_r >= 0).then_some((deg_x as usize, deg_y as usize, max_r as usize))
}

// ---------------------------------------------------------------------------
// Generators

/// Circulant graph on `order` vertices with connection set `±1..±⌊degree/2⌋`,
/// plus the antipodal vertex when `degree` is odd.
pub fn regular_circulant(order: usize, degree: usize) -> Result<Graph, FamilyError> {
    if degree >= order.max(1) || (degree % 2 == 1 && order % 2 == 1) {
        return Err(FamilyError::NoCirculant { order, degree });
    }
    let mut g = Graph::empty(order);
    for v in 0..order {
        for d in 1..=degree / 2 {
            g.set(v, (v + d) % order);
        }
        if degree % 2 == 1 {
            g.set(v, (v + order / 2) % order);
        }
    }
    Ok(g)
}

/// `G₁ ∨ G₂` with `G₁` `r`-regular on `n − k + r` vertices and `G₂` on
/// `k − r` vertices. `core` defaults to [`regular_circulant`], `g2` to the
/// complete graph.
pub fn gen_ep(n: usize, k: usize, r: usize, core: Option<&Graph>, g2: Option<&Graph>) -> Result<Graph, FamilyError> {
    if r > k || k >= n {
        return Err(FamilyError::Infeasible("EP needs 0 <= r <= k < n"));
    }
    let core_order = n - k + r;
    let core = match core {
        Some(c) => c.clone(),
        None => regular_circulant(core_order, r)?,
    };
    if core.order() != core_order {
        return Err(FamilyError::WrongOrder { what: "EP core", expected: core_order, got: core.order() });
    }
    if core.is_regular() != Some(r) {
        return Err(FamilyError::NotRegular(r));
    }
    let g2 = match g2 {
        Some(h) => h.clone(),
        None => Graph::complete(k - r),
    };
    if g2.order() != k - r {
        return Err(FamilyError::WrongOrder { what: "EP join part", expected: k - r, got: g2.order() });
    }
    Ok(core.join(&g2))
}

/// `complement(F) ∨ G₂` for EC: `F` semi-regular bipartite with
/// `|X| = n−k−1+m` of degree `k−s+2` and `|Y| = k−s+2+t` of degree `n−k−1`,
/// `G₂` on `s−1−m−t` vertices. `g2_edges` selects `G₂`'s edges as a pair mask
/// (graph6 column order); `None` means complete.
pub fn gen_ec(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    t: usize,
    f: Option<&Graph>,
    g2_edges: Option<u64>,
) -> Result<Graph, FamilyError> {
    gen_bipartite_family(Family::EC, n, FamilyParams::new(k, s), m, t, f, g2_edges)
}

/// As [`gen_ec`] with `X`-degree `k−s` and `s+1−m−t` join vertices.
pub fn gen_es(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    t: usize,
    f: Option<&Graph>,
    g2_edges: Option<u64>,
) -> Result<Graph, FamilyError> {
    gen_bipartite_family(Family::ES, n, FamilyParams::new(k, s), m, t, f, g2_edges)
}

fn gen_bipartite_family(
    family: Family,
    n: usize,
    p: FamilyParams,
    m: usize,
    t: usize,
    f: Option<&Graph>,
    g2_edges: Option<u64>,
) -> Result<Graph, FamilyError> {
    let (deg_x, deg_y, max_r) =
        bipartite_shape(family, n, p).ok_or(FamilyError::Infeasible("side degrees must be positive"))?;
    if m + t > max_r {
        return Err(FamilyError::Infeasible("join part would have negative order"));
    }
    let size_x = deg_y + m;
    let size_y = deg_x + t;
    if size_x + size_y + (max_r - m - t) != n {
        return Err(FamilyError::Infeasible("part sizes do not add up to n"));
    }
    if size_x * deg_x != size_y * deg_y {
        return Err(FamilyError::Infeasible("handshake count |X|·deg_x ≠ |Y|·deg_y"));
    }
    let bip = match f {
        Some(f) => {
            if f.order() != size_x + size_y {
                return Err(FamilyError::WrongOrder { what: "bipartite core", expected: size_x + size_y, got: f.order() });
            }
            let w = f.semiregular_bipartition().ok_or(FamilyError::NotBiregular)?;
            let fits = |xs: &[usize], dx, ys: &[usize], dy| xs.len() == size_x && dx == deg_x && ys.len() == size_y && dy == deg_y;
            if !fits(&w.side_x, w.deg_x, &w.side_y, w.deg_y) && !fits(&w.side_y, w.deg_y, &w.side_x, w.deg_x) {
                return Err(FamilyError::NotBiregular);
            }
            f.clone()
        }
        None => cyclic_biregular(size_x, size_y, deg_x, deg_y)?,
    };
    let join_order = max_r - m - t;
    let g2 = match g2_edges {
        None => Graph::complete(join_order),
        Some(mask) => {
            let count = crate::graph::pair_count(join_order);
            if count < 64 && mask >> count != 0 {
                return Err(FamilyError::BadEdgeMask(join_order));
            }
            let mut g2 = Graph::empty(join_order);
            for (i, (u, v)) in pairs(join_order).enumerate().take(64) {
                if mask >> i & 1 == 1 {
                    g2.set(u, v);
                }
            }
            g2
        }
    };
    Ok(bip.complement().join(&g2))
}

/// Bipartite graph on `X = 0..|X|`, `Y = |X|..` where `X_i` is joined to
/// `Y[(i·deg_x + j) mod |Y|]` for `j < deg_x`. Rejected unless the result is
/// biregular. With `|X| = deg_y` and `|Y| = deg_x` this is `K_{|X|,|Y|}`.
pub fn cyclic_biregular(size_x: usize, size_y: usize, deg_x: usize, deg_y: usize) -> Result<Graph, FamilyError> {
    if deg_x > size_y || size_x * deg_x != size_y * deg_y {
        return Err(FamilyError::Infeasible("no biregular bipartite graph with these sides"));
    }
    let mut g = Graph::empty(size_x + size_y);
    for i in 0..size_x {
        for j in 0..deg_x {
            g.set(i, size_x + (i * deg_x + j) % size_y);
        }
    }
    let ok = (0..size_x).all(|v| g.degree(v) == deg_x) && (size_x..size_x + size_y).all(|v| g.degree(v) == deg_y);
    if ok {
        Ok(g)
    } else {
        Err(FamilyError::NotBiregular)
    }
}

/// `K_{k+1} + K_{n−k−1}`.
pub fn gen_union_cliques(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k + 1 > n {
        return Err(FamilyError::Infeasible("union of cliques needs k <= n - 1"));
    }
    Ok(Graph::complete(k + 1).union(&Graph::complete(n - k - 1)))
}

// ---------------------------------------------------------------------------
// Membership

/// A witness that `g` belongs to `family` for parameters `p`, if any.
pub fn membership(g: &Graph, family: Family, p: FamilyParams, cap: usize) -> Result<Option<FamilyWitness>, FamilyError> {
    let n = g.order();
    if n > cap {
        return Err(FamilyError::CapExceeded { cap, order: n });
    }
    if n == 0 || p.k >= n {
        return Ok(None);
    }
    let witness = match family {
        Family::EP => ep_member(g, p.k),
        Family::EC | Family::ES => bipartite_member(g, family, p),
        Family::UnionCliques => union_cliques_member(g, p.k),
    };
    debug_assert!(witness.as_ref().is_none_or(|w| validate_witness(g, w, p)));
    Ok(witness)
}

fn split_by(n: usize, core: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut in_core = vec![false; n];
    for &v in core {
        in_core[v] = true;
    }
    let mut core: Vec<usize> = (0..n).filter(|&v| in_core[v]).collect();
    core.sort_unstable();
    let join = (0..n).filter(|&v| !in_core[v]).collect();
    (core, join)
}

fn ep_member(g: &Graph, k: usize) -> Option<FamilyWitness> {
    let n = g.order();
    let gc = g.complement();
    let d = n - k - 1;
    // an (n−k−1)-regular complement component has at least n − k vertices
    let comp = gc.components().into_iter().find(|c| c.iter().all(|&v| gc.degree(v) == d))?;
    let (core_part, join_part) = split_by(n, &comp);
    let r = core_part.len() - (n - k);
    Some(FamilyWitness { family: Family::EP, core_part, join_part, r, m: 0, t: 0, sides: None })
}

fn bipartite_member(g: &Graph, family: Family, p: FamilyParams) -> Option<FamilyWitness> {
    let n = g.order();
    let (deg_x, deg_y, max_r) = bipartite_shape(family, n, p)?;
    let gc = g.complement();
    // complement components that are biregular with the required side degrees
    let mut eligible: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for comp in gc.components() {
        if comp.len() < 2 {
            continue;
        }
        let Some(w) = gc.induced(&comp).semiregular_bipartition() else { continue };
        let lift = |side: &[usize]| side.iter().map(|&i| comp[i]).collect::<Vec<_>>();
        if (w.deg_x, w.deg_y) == (deg_x, deg_y) {
            eligible.push((lift(&w.side_x), lift(&w.side_y)));
        } else if (w.deg_y, w.deg_x) == (deg_x, deg_y) {
            eligible.push((lift(&w.side_y), lift(&w.side_x)));
        }
    }
    if eligible.len() >= 64 {
        return None;
    }
    let min_core = n - max_r;
    for choice in 1u64..(1u64 << eligible.len()) {
        let chosen = crate::graph::BitIter(choice).map(|i| &eligible[i]);
        let size: usize = chosen.clone().map(|(x, y)| x.len() + y.len()).sum();
        if size < min_core {
            continue;
        }
        let mut xs: Vec<usize> = chosen.clone().flat_map(|(x, _)| x.iter().copied()).collect();
        let mut ys: Vec<usize> = chosen.flat_map(|(_, y)| y.iter().copied()).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        let (core_part, join_part) = split_by(n, &[xs.as_slice(), ys.as_slice()].concat());
        return Some(FamilyWitness {
            family,
            core_part,
            join_part,
            r: size - min_core,
            m: xs.len() - deg_y,
            t: ys.len() - deg_x,
            sides: Some((xs, ys)),
        });
    }
    None
}

fn union_cliques_member(g: &Graph, k: usize) -> Option<FamilyWitness> {
    let n = g.order();
    if n < k + 2 {
        return None;
    }
    let comps = g.components();
    if comps.len() != 2 {
        return None;
    }
    let complete = |c: &[usize]| c.iter().all(|&v| g.degree(v) == c.len() - 1);
    if !comps.iter().all(|c| complete(c)) {
        return None;
    }
    let core = comps.iter().find(|c| c.len() == k + 1)?;
    let (core_part, join_part) = split_by(n, core);
    Some(FamilyWitness { family: Family::UnionCliques, core_part, join_part, r: 0, m: 0, t: 0, sides: None })
}

/// Checks a witness against the family definition directly on `g`.
pub fn validate_witness(g: &Graph, w: &FamilyWitness, p: FamilyParams) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    for &v in w.core_part.iter().chain(&w.join_part) {
        if v >= n || core::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    if seen.iter().any(|s| !s) || w.core_part.is_empty() {
        return false;
    }
    let cross_edges = w.core_part.iter().map(|&u| w.join_part.iter().filter(|&&v| g.has_edge(u, v)).count()).sum::<usize>();
    let core = g.induced(&w.core_part);
    match w.family {
        Family::UnionCliques => {
            cross_edges == 0
                && w.core_part.len() == p.k + 1
                && w.join_part.len() + p.k + 1 == n
                && core.is_regular() == Some(p.k)
                && g.induced(&w.join_part).edge_count() == crate::graph::pair_count(w.join_part.len())
                && !w.join_part.is_empty()
        }
        Family::EP => {
            cross_edges == w.core_part.len() * w.join_part.len()
                && w.r <= p.k
                && p.k < n
                && w.core_part.len() == n - p.k + w.r
                && w.join_part.len() == p.k - w.r
                && core.is_regular() == Some(w.r)
        }
        Family::EC | Family::ES => {
            let Some((deg_x, deg_y, max_r)) = bipartite_shape(w.family, n, p) else { return false };
            let Some((xs, ys)) = &w.sides else { return false };
            let mut sides_sorted = [xs.as_slice(), ys.as_slice()].concat();
            sides_sorted.sort_unstable();
            let comp = g.complement();
            let in_x = |v: usize| xs.contains(&v);
            let bip_ok = xs.iter().all(|&u| xs.iter().all(|&v| u == v || g.has_edge(u, v)))
                && ys.iter().all(|&u| ys.iter().all(|&v| u == v || g.has_edge(u, v)))
                && xs.iter().all(|&u| ys.iter().filter(|&&v| comp.has_edge(u, v)).count() == deg_x)
                && ys.iter().all(|&v| xs.iter().filter(|&&u| comp.has_edge(u, v)).count() == deg_y);
            sides_sorted == w.core_part
                && cross_edges == w.core_part.len() * w.join_part.len()
                && bip_ok
                && w.r == w.m + w.t
                && w.r <= max_r
                && xs.len() == deg_y + w.m
                && ys.len() == deg_x + w.t
                && w.join_part.len() == max_r - w.r
                && w.core_part.iter().all(|&v| in_x(v) != ys.contains(&v))
        }
    }
}
