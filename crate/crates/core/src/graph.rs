//! Undirected simple graphs on positional vertices `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, so degree queries are
//! popcounts and most exact algorithms in this crate can work directly on
//! `u64` row masks when `n <= 64`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("operation requires at least one vertex")]
    EmptyVertexSet,
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("graph has no edges")]
    NoEdges,
}

/// Undirected simple graph. Symmetric, irreflexive adjacency by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Bipartition of a semi-regular bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionWitness {
    pub side_x: Vec<usize>,
    pub side_y: Vec<usize>,
    pub deg_x: usize,
    pub deg_y: usize,
}

/// Index of the pair `(i, j)`, `i < j`, in graph6 column order:
/// `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Number of unordered vertex pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Pairs `(i, j)`, `i < j`, in graph6 column order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

impl Graph {
    /// The edgeless graph `O_n`.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, rows: vec![0; n * words] }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for (i, j) in pairs(n) {
            g.set(i, j);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let mut g = Graph::path(n);
        g.set(0, n - 1);
        Ok(g)
    }

    /// `K_{a,b} = O_a ∨ O_b`; the first `a` vertices form one side.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::empty(a).join(&Graph::empty(b))
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.set(i, (i + 1) % 5);
            g.set(i, i + 5);
            g.set(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph on `n <= 11` vertices from a bitmask over
    /// [`pair_index`] positions.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        assert!(pair_count(n) <= 64, "pair mask supports at most 11 vertices");
        let mut g = Graph::empty(n);
        for (i, j) in pairs(n) {
            if mask >> pair_index(i, j) & 1 == 1 {
                g.set(i, j);
            }
        }
        g
    }

    /// Inverse of [`Graph::from_pair_mask`].
    pub fn pair_mask(&self) -> u64 {
        assert!(pair_count(self.n) <= 64, "pair mask supports at most 11 vertices");
        self.edges().fold(0, |m, (i, j)| m | 1 << pair_index(i, j))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.set(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a bitmask. Only meaningful for `n <= 64`.
    #[inline]
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }

    /// All neighbourhood masks; `None` when the graph has more than 64 vertices.
    pub fn row_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| (0..self.n).map(|v| self.rows[v * self.words]).collect())
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * 64 + b))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut h = Graph::empty(self.n);
        for u in 0..self.n {
            for wi in 0..self.words {
                let valid = if (wi + 1) * 64 <= self.n {
                    u64::MAX
                } else if wi * 64 >= self.n {
                    0
                } else {
                    (1u64 << (self.n - wi * 64)) - 1
                };
                h.rows[u * self.words + wi] = !self.rows[u * self.words + wi] & valid;
            }
            h.rows[u * self.words + u / 64] &= !(1 << (u % 64));
        }
        h
    }

    /// Disjoint union `self + other`; `other`'s vertices are shifted by `self.order()`.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v);
        }
        g
    }

    /// Join `self ∨ other`: the disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v);
            }
        }
        g
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set(a, b);
                }
            }
        }
        g
    }

    /// `G - X`: deletes `removed` and relabels the survivors in increasing order.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// `true` when every edge of `self` is an edge of `other` (same order required).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// δ(G).
    pub fn min_degree(&self) -> Result<usize, GraphError> {
        (0..self.n).map(|v| self.degree(v)).min().ok_or(GraphError::EmptyVertexSet)
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        (0..self.n).map(|v| self.degree(v)).max().ok_or(GraphError::EmptyVertexSet)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A graph with no vertices is reported as not connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        if self.n <= 64 {
            return mask_connected(&self.row_masks().unwrap_or_default(), low_mask(self.n));
        }
        self.components().len() == 1
    }

    /// The common degree, if all vertices have equal degree. `None` for `n = 0`.
    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// A global bipartition with uniform degree on each side, if one exists.
    ///
    /// Isolated vertices are not allowed, so the graph must have minimum
    /// degree at least 1. Each component is 2-coloured independently and then
    /// oriented so that all components agree on `(deg_x, deg_y)`. When both
    /// degrees are equal, `deg_x == deg_y` and the orientation is the colouring.
    pub fn semiregular_bipartition(&self) -> Option<BipartitionWitness> {
        if self.n == 0 || self.min_degree().ok()? == 0 {
            return None;
        }
        let mut colour = vec![u8::MAX; self.n];
        let mut side_x = Vec::new();
        let mut side_y = Vec::new();
        let mut degs: Option<(usize, usize)> = None;
        for comp in self.components() {
            let s = comp[0];
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
            let (zero, one): (Vec<usize>, Vec<usize>) = comp.iter().partition(|&&v| colour[v] == 0);
            let d0 = self.degree(zero[0]);
            let d1 = self.degree(one[0]);
            if zero.iter().any(|&v| self.degree(v) != d0) || one.iter().any(|&v| self.degree(v) != d1) {
                return None;
            }
            let (cx, cy, dx, dy) = match degs {
                None => (zero, one, d0, d1),
                Some((dx, dy)) if (d0, d1) == (dx, dy) => (zero, one, d0, d1),
                Some((dx, dy)) if (d1, d0) == (dx, dy) => (one, zero, d1, d0),
                Some(_) => return None,
            };
            degs = Some((dx, dy));
            side_x.extend(cx);
            side_y.extend(cy);
        }
        let (deg_x, deg_y) = degs?;
        side_x.sort_unstable();
        side_y.sort_unstable();
        Some(BipartitionWitness { side_x, side_y, deg_x, deg_y })
    }

    /// Checks a bipartition witness against this graph.
    pub fn validates_bipartition(&self, w: &BipartitionWitness) -> bool {
        let mut side = vec![2u8; self.n];
        for (&v, s) in w.side_x.iter().map(|v| (v, 0u8)).chain(w.side_y.iter().map(|v| (v, 1u8))) {
            if v >= self.n || side[v] != 2 {
                return false;
            }
            side[v] = s;
        }
        side.iter().all(|&s| s != 2)
            && self.edges().all(|(u, v)| side[u] != side[v])
            && w.side_x.iter().all(|&v| self.degree(v) == w.deg_x)
            && w.side_y.iter().all(|&v| self.degree(v) == w.deg_y)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Iterator over set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Whether the subgraph induced on `alive` is connected (empty counts as not).
pub fn mask_connected(rows: &[u64], alive: u64) -> bool {
    if alive == 0 {
        return false;
    }
    let start = alive & alive.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for v in BitIter(frontier) {
            next |= rows[v];
        }
        next &= alive & !seen;
        seen |= next;
        frontier = next;
    }
    seen == alive
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn complement_of_complete_is_empty() {
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
    }

    #[test]
    fn complement_of_c5_is_a_five_cycle() {
        let c = Graph::cycle(5).unwrap().complement();
        assert_eq!(c.is_regular(), Some(2));
        assert!(c.is_connected());
        assert_eq!(c.edge_count(), 5);
    }

    #[test]
    fn complement_of_o4_join_k2() {
        let g = Graph::empty(4).join(&Graph::complete(2));
        let expected = Graph::complete(4).union(&Graph::empty(2));
        assert_eq!(g.complement(), expected);
    }

    #[test]
    fn complement_handles_multiword_rows() {
        let g = Graph::cycle(70).unwrap();
        let c = g.complement();
        for v in 0..70 {
            assert_eq!(g.degree(v) + c.degree(v), 69);
            assert!(!c.has_edge(v, v));
        }
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn join_and_union_constructions() {
        assert_eq!(Graph::empty(3).join(&Graph::empty(2)), Graph::complete_bipartite(3, 2));
        assert_eq!(Graph::complete(1).union(&Graph::complete(1)), Graph::empty(2));
        let g = Graph::complete(2).join(&Graph::empty(4));
        assert_eq!(g.degrees(), vec![5, 5, 2, 2, 2, 2]);
    }

    #[test]
    fn standard_constructions() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        let kb = Graph::complete_bipartite(3, 2);
        assert_eq!(kb.edge_count(), 6);
        assert_eq!(sorted_degrees(&kb), vec![2, 2, 2, 3, 3]);
        assert_eq!(Graph::path(4).degrees(), vec![1, 2, 2, 1]);
        assert_eq!(Graph::cycle(2), Err(GraphError::CycleTooShort(2)));
        assert_eq!(Graph::petersen().is_regular(), Some(3));
        assert_eq!(Graph::petersen().edge_count(), 15);
    }

    #[test]
    fn edge_insertion_errors() {
        let mut g = Graph::empty(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 }));
    }

    #[test]
    fn min_degree_cases() {
        assert_eq!(Graph::complete(5).min_degree(), Ok(4));
        assert_eq!(Graph::path(4).min_degree(), Ok(1));
        assert_eq!(Graph::empty(4).join(&Graph::complete(2)).min_degree(), Ok(2));
        assert_eq!(Graph::empty(0).min_degree(), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn connectivity_cases() {
        assert!(!Graph::complete(5).union(&Graph::complete(5)).is_connected());
        assert!(Graph::path(6).is_connected());
        let prism = Graph::cycle(6).unwrap().complement();
        assert_eq!(prism.is_regular(), Some(3));
        assert!(prism.is_connected());
        assert!(Graph::complete(1).is_connected());
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn regular_and_semiregular_predicates() {
        assert_eq!(Graph::cycle(6).unwrap().is_regular(), Some(2));
        let star = Graph::complete_bipartite(1, 3);
        let w = star.semiregular_bipartition().unwrap();
        assert_eq!((w.deg_x, w.deg_y), (3, 1));
        assert_eq!(w.side_x, vec![0]);
        assert!(Graph::path(4).semiregular_bipartition().is_none());
        assert!(Graph::cycle(5).unwrap().semiregular_bipartition().is_none());
        // isolated vertex
        assert!(Graph::complete_bipartite(2, 2).union(&Graph::empty(1)).semiregular_bipartition().is_none());
        // a regular bipartite graph satisfies both predicates
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.is_regular(), Some(2));
        let w = c6.semiregular_bipartition().unwrap();
        assert_eq!((w.deg_x, w.deg_y), (2, 2));
        assert!(c6.validates_bipartition(&w));
    }

    #[test]
    fn semiregular_components_must_agree() {
        // K_{1,2} + K_{2,1}: orientations differ per component but agree globally
        let g = Graph::complete_bipartite(1, 2).union(&Graph::complete_bipartite(2, 1));
        let w = g.semiregular_bipartition().unwrap();
        assert_eq!((w.deg_x, w.deg_y), (2, 1));
        assert_eq!(w.side_x, vec![0, 5]);
        assert!(g.validates_bipartition(&w));
        // K_{1,2} + K_2: a regular component cannot mix with a non-regular one
        let g = Graph::complete_bipartite(1, 2).union(&Graph::complete(2));
        assert!(g.semiregular_bipartition().is_none());
    }

    #[test]
    fn complete_bipartite_side_degrees() {
        for a in 1..6 {
            for b in 1..6 {
                let w = Graph::complete_bipartite(a, b).semiregular_bipartition().unwrap();
                assert_eq!((w.deg_x, w.deg_y), (b, a));
            }
        }
    }

    #[test]
    fn pair_mask_round_trip() {
        let g = Graph::petersen().induced(&[0, 1, 2, 3, 5, 7, 9]);
        assert_eq!(Graph::from_pair_mask(7, g.pair_mask()), g);
        assert_eq!(pair_index(0, 1), 0);
        assert_eq!(pair_index(1, 2), 2);
        assert_eq!(pair_index(0, 3), 3);
        assert_eq!(pairs(4).collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn without_vertices_relabels() {
        let g = Graph::path(5).without_vertices(&[2]);
        assert_eq!(g, Graph::path(2).union(&Graph::path(2)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (0usize..=11).prop_flat_map(|n| {
                let m = pair_count(n);
                let max = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
                (Just(n), 0..=max).prop_map(|(n, mask)| Graph::from_pair_mask(n, mask))
            })
        }

        proptest! {
            #[test]
            fn complement_is_an_involution(g in arb_graph()) {
                prop_assert_eq!(g.complement().complement(), g);
            }

            #[test]
            fn degrees_sum_with_complement(g in arb_graph()) {
                let c = g.complement();
                for v in 0..g.order() {
                    prop_assert_eq!(g.degree(v) + c.degree(v), g.order() - 1);
                }
            }

            #[test]
            fn adjacency_is_symmetric_and_irreflexive(g in arb_graph()) {
                for u in 0..g.order() {
                    prop_assert!(!g.has_edge(u, u));
                    prop_assert_eq!(g.degree(u), g.neighbors(u).count());
                    for v in 0..g.order() {
                        prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                    }
                }
            }

            #[test]
            fn mask_connectivity_matches_components(g in arb_graph()) {
                prop_assume!(g.order() > 0);
                prop_assert_eq!(g.is_connected(), g.components().len() == 1);
            }
        }
    }
}
