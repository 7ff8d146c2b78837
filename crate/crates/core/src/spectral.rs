//! Adjacency spectral radius by shifted power iteration.
//!
//! The iteration runs on `A + n·I`, whose eigenvalues are all positive, so the
//! dominant one is `μ + n` even for bipartite graphs. Every step brackets `μ`
//! between the Rayleigh quotient (a lower bound) and the Collatz–Wielandt
//! maximum `max_i (Ax)_i / x_i` (an upper bound for any positive `x`); the
//! iteration stops once the bracket is narrower than the tolerance.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{BitIter, Graph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_BAND: f64 = 1e-6;
const START_PERTURBATION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    /// Estimated spectral radius; a certified lower bound.
    pub value: f64,
    /// `|A·x − value·x|∞` for the returned unit vector `x`.
    pub residual: f64,
    /// Certified upper bound on the spectral radius.
    pub upper: f64,
    pub iterations: usize,
    pub shift: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("spectral radius of a graph without vertices")]
    EmptyGraph,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("power iteration did not converge in {} steps (bracket [{}, {}])", .best.iterations, .best.value, .best.upper)]
    NoConvergence { best: SpectralEstimate },
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Below,
    Equal,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub verdict: Verdict,
    pub mu_squared: f64,
    pub radicand: i64,
}

enum Adjacency {
    Masks(Vec<u64>),
    Lists(Vec<Vec<usize>>),
}

impl Adjacency {
    fn new(g: &Graph) -> Self {
        match g.row_masks() {
            Some(m) => Adjacency::Masks(m),
            None => Adjacency::Lists((0..g.order()).map(|v| g.neighbors(v).collect()).collect()),
        }
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        match self {
            Adjacency::Masks(rows) => {
                for (yi, &row) in y.iter_mut().zip(rows) {
                    *yi = BitIter(row).map(|j| x[j]).sum();
                }
            }
            Adjacency::Lists(lists) => {
                for (yi, nb) in y.iter_mut().zip(lists) {
                    *yi = nb.iter().map(|&j| x[j]).sum();
                }
            }
        }
    }
}

/// Largest adjacency eigenvalue of `g`, within `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    let n = g.order();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let shift = n as f64;
    if g.edge_count() == 0 {
        return Ok(SpectralEstimate { value: 0.0, residual: 0.0, upper: 0.0, iterations: 0, shift });
    }
    let adj = Adjacency::new(g);
    let cap = (100 * n * n).max(1000);
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 * START_PERTURBATION).collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut best = SpectralEstimate { value: 0.0, residual: f64::INFINITY, upper: shift, iterations: 0, shift };
    for it in 1..=cap {
        adj.apply(&x, &mut y);
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let upper = x
            .iter()
            .zip(&y)
            .filter(|(xi, _)| **xi > 0.0)
            .map(|(xi, yi)| yi / xi)
            .fold(f64::NEG_INFINITY, f64::max);
        let value = rq.clamp(0.0, (n - 1) as f64);
        let upper = upper.max(value);
        if upper - value < best.upper - best.value {
            best = SpectralEstimate { value, residual: residual(&x, &y, value), upper, iterations: it, shift };
        }
        if upper - value <= tol {
            return Ok(best);
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi + shift * *xi;
        }
        normalize(&mut x);
    }
    best.iterations = cap;
    Err(SpectralError::NoConvergence { best })
}

fn normalize(x: &mut [f64]) {
    let norm = libm::sqrt(x.iter().map(|v| v * v).sum());
    for v in x.iter_mut() {
        *v /= norm;
    }
}

fn residual(x: &[f64], ax: &[f64], value: f64) -> f64 {
    x.iter().zip(ax).map(|(xi, yi)| (yi - value * xi).abs()).fold(0.0, f64::max)
}

/// `min { √(d(u)·d(v)) : uv ∈ E(G) }`.
pub fn min_edge_geometric_degree(g: &Graph) -> Result<f64, SpectralError> {
    g.edges()
        .map(|(u, v)| g.degree(u) * g.degree(v))
        .min()
        .map(|p| libm::sqrt(p as f64))
        .ok_or(SpectralError::NoEdges)
}

/// Compares `μ²` against an integer radicand with a symmetric band.
pub fn compare_to_bound(est: &SpectralEstimate, radicand: i64, band: f64) -> BoundComparison {
    let mu_squared = est.value * est.value;
    let r = radicand as f64;
    let verdict = if (mu_squared - r).abs() <= band {
        Verdict::Equal
    } else if mu_squared < r - band {
        Verdict::Below
    } else {
        Verdict::Above
    };
    BoundComparison { verdict, mu_squared, radicand }
}
