//! The Bondy–Chvátal `k`-closure and the closure parameter attached to each
//! property.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::certify::{Theorem, TheoremParams};
use crate::graph::{pair_count, pair_index, pairs, Graph};

#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub closed: Graph,
    /// Insertion log; depends on scan order, unlike `closed`.
    pub added_edges: Vec<(usize, usize)>,
    pub k: usize,
}

impl PartialEq for ClosureResult {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.closed == other.closed
    }
}

/// `C_k(G)`: repeatedly joins nonadjacent pairs with degree sum at least `k`.
pub fn k_closure(g: &Graph, k: usize) -> ClosureResult {
    run(g, k, pairs(g.order()))
}

/// Same fixpoint as [`k_closure`], seeding the worklist in `order` first.
/// Pairs absent from `order` are appended in the default order.
pub fn k_closure_in_order(g: &Graph, k: usize, order: &[(usize, usize)]) -> ClosureResult {
    let n = g.order();
    let normalized = order
        .iter()
        .filter(|(u, v)| u != v && *u < n && *v < n)
        .map(|&(u, v)| (u.min(v), u.max(v)));
    run(g, k, normalized.chain(pairs(n)))
}

fn run<I>(g: &Graph, k: usize, seed: I) -> ClosureResult
where
    I: Iterator<Item = (usize, usize)>,
{
    let n = g.order();
    let mut closed = g.clone();
    let mut degree = closed.degrees();
    let mut queued = vec![false; pair_count(n)];
    let mut queue = VecDeque::new();
    for (u, v) in seed {
        let idx = pair_index(u, v);
        if !queued[idx] && !closed.has_edge(u, v) {
            queued[idx] = true;
            queue.push_back((u, v));
        }
    }
    let mut added_edges = Vec::new();
    while let Some((u, v)) = queue.pop_front() {
        queued[pair_index(u, v)] = false;
        if closed.has_edge(u, v) || degree[u] + degree[v] < k {
            continue;
        }
        closed.set(u, v);
        degree[u] += 1;
        degree[v] += 1;
        added_edges.push((u, v));
        for end in [u, v] {
            for w in 0..n {
                if w == end || closed.has_edge(end, w) {
                    continue;
                }
                let (a, b) = (end.min(w), end.max(w));
                let idx = pair_index(a, b);
                if !queued[idx] {
                    queued[idx] = true;
                    queue.push_back((a, b));
                }
            }
        }
    }
    ClosureResult { closed, added_edges, k }
}

/// No two distinct nonadjacent vertices have degree sum `>= k`.
pub fn is_k_closed(g: &Graph, k: usize) -> bool {
    let d = g.degrees();
    pairs(g.order()).all(|(u, v)| g.has_edge(u, v) || d[u] + d[v] < k)
}

/// The `k` for which the property named by `params` is `k`-stable on `n`
/// vertices. Negative values saturate to 0 (every pair is then joined).
pub fn closure_parameter(params: &TheoremParams, n: usize) -> usize {
    let n = n as i64;
    let p = params.param as i64;
    let k = match params.theorem {
        Theorem::SConn | Theorem::SEdgeConn => n + p - 2,
        Theorem::Deficient => n - p - 1,
        Theorem::PathCover => n - p,
        Theorem::SHam | Theorem::SEdgeHam => n + p,
    };
    k.max(0) as usize
}

/// Lower bound on `d(u) + d(v)` over edges `uv` of the complement of any
/// output of [`closure_parameter`]'s closure: `2(n−1) − (k−1)`.
pub fn complement_degree_sum_floor(n: usize, k: usize) -> i64 {
    2 * (n as i64 - 1) - (k as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pair_count;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_graph_is_closed() {
        let r = k_closure(&Graph::complete(5), 4);
        assert_eq!(r.closed, Graph::complete(5));
        assert!(r.added_edges.is_empty());
    }

    #[test]
    fn path_closes_to_complete() {
        let r = k_closure(&Graph::path(4), 3);
        assert_eq!(r.closed, Graph::complete(4));
        assert_eq!(r.added_edges.len(), 3);
    }

    #[test]
    fn five_cycle_is_5_closed() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(k_closure(&c5, 5).closed, c5);
        assert_eq!(k_closure(&c5, 4).closed, Graph::complete(5));
    }

    #[test]
    fn degenerate_parameters() {
        let g = Graph::path(5);
        assert_eq!(k_closure(&g, 0).closed, Graph::complete(5));
        assert_eq!(k_closure(&g, 9).closed, g);
        assert_eq!(k_closure(&Graph::empty(0), 3).closed, Graph::empty(0));
    }

    #[test]
    fn closure_parameters() {
        let p = |t, param| TheoremParams::new(t, 1, param);
        assert_eq!(closure_parameter(&p(Theorem::SHam, 0), 10), 10);
        assert_eq!(closure_parameter(&p(Theorem::SEdgeHam, 2), 10), 12);
        assert_eq!(closure_parameter(&p(Theorem::Deficient, 0), 10), 9);
        assert_eq!(closure_parameter(&p(Theorem::PathCover, 2), 8), 6);
        assert_eq!(closure_parameter(&p(Theorem::SConn, 1), 9), 8);
        assert_eq!(closure_parameter(&p(Theorem::SEdgeConn, 3), 9), 10);
        assert_eq!(closure_parameter(&p(Theorem::Deficient, 5), 4), 0);
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, usize)> {
        (1usize..=10).prop_flat_map(|n| {
            (Just(n), proptest::bits::u64::between(0, pair_count(n)), 0..=2 * n)
                .prop_map(|(n, mask, k)| (Graph::from_pair_mask(n, mask), k))
        })
    }

    proptest! {
        #[test]
        fn closure_is_a_closed_supergraph((g, k) in arb_graph()) {
            let r = k_closure(&g, k);
            prop_assert!(g.is_subgraph_of(&r.closed));
            prop_assert!(is_k_closed(&r.closed, k));
            prop_assert_eq!(r.closed.edge_count(), g.edge_count() + r.added_edges.len());
        }

        #[test]
        fn closure_is_idempotent((g, k) in arb_graph()) {
            let once = k_closure(&g, k).closed;
            prop_assert!(k_closure(&once, k).added_edges.is_empty());
        }

        #[test]
        fn smaller_parameter_gives_larger_closure((g, k) in arb_graph()) {
            let tight = k_closure(&g, k + 1).closed;
            prop_assert!(tight.is_subgraph_of(&k_closure(&g, k).closed));
        }

        #[test]
        fn scan_order_does_not_matter((g, k) in arb_graph(), seed in any::<u64>()) {
            let mut order: Vec<_> = pairs(g.order()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(k_closure_in_order(&g, k, &order), k_closure(&g, k));
        }

        #[test]
        fn complement_degree_sums_clear_the_floor((g, k) in arb_graph()) {
            let h = k_closure(&g, k).closed;
            let hc = h.complement();
            let floor = complement_degree_sum_floor(g.order(), k);
            for (u, v) in hc.edges() {
                prop_assert!((hc.degree(u) + hc.degree(v)) as i64 >= floor);
            }
        }
    }
}
