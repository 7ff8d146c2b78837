//! Spectral sufficient conditions on the complement of a graph, with exact
//! oracles to check them against.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and the validation harness live in the `specert` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod closure;
pub mod families;
pub mod graph;
pub mod oracles;
pub mod spectral;

pub use certify::{certify, CertOutcome, CertStatus, CertifyOptions, Theorem, TheoremParams};
pub use graph::{Graph, GraphError};
