//! Phase retrieval by polarization.
//!
//! A signal `x ∈ C^M` is probed with a vertex frame `{φ_i}` living on the
//! vertices of a sparse graph, plus three interferometric vectors
//! `φ_i + ζ^k φ_j` (`ζ = e^{2πi/3}`) per oriented edge. The edge intensities
//! determine `conj(⟨x,φ_i⟩)⟨x,φ_j⟩` exactly, so relative phases can be read off
//! along edges and combined into vertex phases, after which `x` follows from a
//! linear least-squares solve.
//!
//! Two reconstruction pipelines are provided:
//!
//! * [`recovery::procedure_a`] for noiseless data: zero-vertex deletion, one
//!   large component, breadth-first phase propagation.
//! * [`recovery::procedure_b`] for noisy data: reliability pruning, spectral
//!   connectivity pruning, angular synchronization over the connection
//!   Laplacian, and removal of the largest vertex intensities.
//!
//! [`baselines`] holds alternating projections and the two least-squares phase
//! oracles, and [`experiments`] the seeded sweep harness.

pub mod baselines;
pub mod ensemble;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod polarization;
pub mod recovery;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
