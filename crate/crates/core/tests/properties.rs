use nalgebra::DMatrix;
use proptest::prelude::*;
use specert_core::certify::{certify, CertStatus, CertifyOptions, Theorem, TheoremParams};
use specert_core::closure::{closure_parameter, k_closure};
use specert_core::families::{self, Family, FamilyParams};
use specert_core::graph::{pair_count, pairs, Graph};
use specert_core::oracles::{self, Property};
use specert_core::spectral::spectral_radius;

fn eigen_max(g: &Graph) -> f64 {
    let n = g.order();
    if n == 0 {
        return 0.0;
    }
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::MIN, f64::max)
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), pair_count(n)).prop_map(move |bits| {
            let edges = pairs(n).zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn connected_after_removing(g: &Graph, removed: u32) -> bool {
    let keep: Vec<usize> = (0..g.order()).filter(|v| removed >> v & 1 == 0).collect();
    if keep.is_empty() {
        return true;
    }
    let mut seen = vec![false; g.order()];
    let mut stack = vec![keep[0]];
    seen[keep[0]] = true;
    while let Some(u) = stack.pop() {
        for &v in &keep {
            if !seen[v] && g.has_edge(u, v) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    keep.iter().all(|&v| seen[v])
}

fn brute_connectivity(g: &Graph) -> usize {
    let n = g.order();
    let mut best = n.saturating_sub(1);
    for removed in 0u32..1 << n {
        let size = removed.count_ones() as usize;
        if size < best && size + 2 <= n && !connected_after_removing(g, removed) {
            best = size;
        }
    }
    best
}

fn brute_max_matching(g: &Graph) -> usize {
    fn go(g: &Graph, used: u32, from: usize) -> usize {
        let n = g.order();
        let Some(u) = (from..n).find(|&u| used >> u & 1 == 0) else { return 0 };
        let mut best = go(g, used | 1 << u, u + 1);
        for v in u + 1..n {
            if used >> v & 1 == 0 && g.has_edge(u, v) {
                best = best.max(1 + go(g, used | 1 << u | 1 << v, u + 1));
            }
        }
        best
    }
    go(g, 0, 0)
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, visit) {
            return true;
        }
        items.swap(k, i);
    }
    false
}

fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    permutations(&mut rest, 0, &mut |p| {
        let mut cycle = vec![0];
        cycle.extend_from_slice(p);
        (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
    })
}

fn brute_path_cover(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = n;
    permutations(&mut order, 0, &mut |p| {
        let breaks = (1..n).filter(|&i| !g.has_edge(p[i - 1], p[i])).count();
        best = best.min(breaks + 1);
        best == 1
    });
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectral_radius_matches_dense_eigensolver(g in graph_strategy(12)) {
        let est = spectral_radius(&g, 1e-12).unwrap();
        prop_assert!((est.value - eigen_max(&g)).abs() < 1e-7);
        prop_assert!(est.upper + 1e-9 >= est.value);
    }

    #[test]
    fn connectivity_matches_subset_removal(g in graph_strategy(8)) {
        prop_assert_eq!(oracles::vertex_connectivity(&g).unwrap(), brute_connectivity(&g));
    }

    #[test]
    fn deficiency_matches_exhaustive_matching(g in graph_strategy(9)) {
        prop_assert_eq!(oracles::deficiency(&g).unwrap(), g.order() - 2 * brute_max_matching(&g));
    }

    #[test]
    fn hamiltonicity_and_path_cover_match_permutations(g in graph_strategy(7)) {
        prop_assert_eq!(oracles::is_hamiltonian(&g).unwrap().holds, brute_hamiltonian(&g));
        prop_assert_eq!(oracles::min_path_cover(&g).unwrap(), brute_path_cover(&g));
    }

    #[test]
    fn negative_verdicts_carry_valid_witnesses(g in graph_strategy(8), s in 0usize..3) {
        for p in [
            Property::SConnected(s.max(1)),
            Property::SEdgeConnected(s.max(1)),
            Property::BetaDeficient(s),
            Property::SPathCoverable(s.max(1)),
            Property::SHamiltonian(s),
            Property::SEdgeHamiltonian(s),
        ] {
            if let Ok(v) = oracles::decide(&g, p) {
                prop_assert_eq!(oracles::verify_verdict(&g, p, &v), Ok(true));
            }
        }
    }

    #[test]
    fn certified_graphs_have_the_property(g in graph_strategy(9)) {
        let opts = CertifyOptions::default();
        for params in TheoremParams::all_for_order(g.order(), &Theorem::ALL) {
            let out = certify(&g, &params, &opts).unwrap();
            if out.status == CertStatus::Certified {
                prop_assert!(oracles::decide(&g, params.property()).unwrap().holds, "{:?}", params);
            }
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone(g in graph_strategy(10), k in 0usize..20) {
        let c = k_closure(&g, k).closed;
        prop_assert!(g.is_subgraph_of(&c));
        prop_assert_eq!(k_closure(&c, k).closed, c.clone());
        prop_assert!(k_closure(&g, k + 1).closed.is_subgraph_of(&c));
    }

    #[test]
    fn closure_preserves_the_stable_properties(g in graph_strategy(8)) {
        let n = g.order();
        for s in 1..=2 {
            for (theorem, p) in [
                (Theorem::SConn, Property::SConnected(s)),
                (Theorem::PathCover, Property::SPathCoverable(s)),
                (Theorem::SHam, Property::SHamiltonian(s - 1)),
            ] {
                let param = if theorem == Theorem::SHam { s - 1 } else { s };
                let k = closure_parameter(&TheoremParams::new(theorem, 0, param), n);
                let c = k_closure(&g, k).closed;
                prop_assert_eq!(oracles::decide(&g, p).unwrap().holds, oracles::decide(&c, p).unwrap().holds);
            }
        }
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(15)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.order() * g.order().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }
}

#[test]
fn generated_family_members_attain_the_bound() {
    let cases = [
        (Theorem::SConn, 6, 2, 1),
        (Theorem::SConn, 8, 3, 1),
        (Theorem::Deficient, 10, 4, 0),
        (Theorem::PathCover, 8, 3, 1),
        (Theorem::SHam, 7, 3, 0),
        (Theorem::SHam, 9, 4, 0),
    ];
    for (theorem, n, k, param) in cases {
        let params = TheoremParams::new(theorem, k, param);
        let radicand = params.radicand(n) as f64;
        let g = families::gen_ep(n, k, 0, None, None).unwrap();
        let mu = eigen_max(&g.complement());
        assert!((mu * mu - radicand).abs() < 1e-8, "{theorem:?} n={n} mu={mu}");
        let w = families::membership(&g, Family::EP, FamilyParams::new(k, param), 16).unwrap().expect("EP member");
        assert!(families::validate_witness(&g, &w, FamilyParams::new(k, param)));
    }
    let g = families::gen_union_cliques(10, 4).unwrap();
    assert!((eigen_max(&g.complement()) - 5.0).abs() < 1e-9);
}

#[test]
fn theorem_examples() {
    let k9 = Graph::complete(9);
    let out = certify(&k9, &TheoremParams::new(Theorem::SConn, 4, 1), &CertifyOptions::default()).unwrap();
    assert_eq!(out.status, CertStatus::Certified);
    assert_eq!(out.radicand, 20);

    let two_cliques = Graph::complete(5).union(&Graph::complete(5));
    let params = TheoremParams::new(Theorem::Deficient, 4, 0);
    let strict = certify(&two_cliques, &params, &CertifyOptions::default()).unwrap();
    assert_eq!(strict.status, CertStatus::HypothesisUnmet);
    let relaxed = certify(&two_cliques, &params, &CertifyOptions { relax_connectivity: true, ..CertifyOptions::default() }).unwrap();
    assert_eq!(relaxed.status, CertStatus::Exceptional);
    assert_eq!(oracles::deficiency(&two_cliques), Ok(2));
}
