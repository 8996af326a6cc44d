use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::linalg::sym_eigenvalues_sorted;
use crate::{Error, Result};

/// Tolerance for deciding that a normalized-Laplacian eigenvalue is nonzero.
pub const GAP_TOL: f64 = 1e-9;

/// Spectrum of `L = I − D^{-1/2} A D^{-1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    /// Ascending, `0 = λ1 ≤ … ≤ λn ≤ 2`.
    pub eigenvalues: Vec<f64>,
    /// `λ2`.
    pub spectral_gap: f64,
    /// `max(|1 − λ2|, |1 − λn|)`.
    pub expansion: f64,
}

/// Dense normalized Laplacian. Isolated vertices are rejected since
/// `D^{-1/2}` is undefined there.
pub fn normalized_laplacian(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.n_vertices();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::degenerate(format!("vertex {v} is isolated")));
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut l = DMatrix::identity(n, n);
    for e in g.edges() {
        let w = inv_sqrt[e.tail] * inv_sqrt[e.head];
        l[(e.tail, e.head)] = -w;
        l[(e.head, e.tail)] = -w;
    }
    Ok(l)
}

pub fn spectral_summary(g: &Graph) -> Result<SpectralSummary> {
    if g.n_vertices() < 2 {
        return Err(Error::degenerate("spectral summary needs at least two vertices"));
    }
    let eigenvalues = sym_eigenvalues_sorted(normalized_laplacian(g)?);
    let spectral_gap = eigenvalues[1];
    let last = *eigenvalues.last().expect("n ≥ 2");
    let expansion = (1.0 - spectral_gap).abs().max((1.0 - last).abs());
    Ok(SpectralSummary { eigenvalues, spectral_gap, expansion })
}

/// `g(p, q) = 1 − 2(q(1 − q) − (1 − p))`, the spectral-gap level above which
/// reliability pruning followed by connectivity pruning keeps `q|V|` vertices.
pub fn pruning_gap_bound(p: f64, q: f64) -> f64 {
    1.0 - 2.0 * (q * (1.0 - q) - (1.0 - p))
}

/// Connectivity threshold `τ = (λ2 − g(p, q))² / 8` for retaining a `q`
/// fraction of the vertices after removing at most `(1 − p)|V|`.
pub fn connectivity_threshold(p: f64, q: f64, lambda2: f64) -> Result<f64> {
    if !(p <= 1.0 && q <= p && q >= 2.0 / 3.0 - 1e-12) {
        return Err(Error::param(format!("need 1 ≥ p ≥ q ≥ 2/3 (got p = {p}, q = {q})")));
    }
    let g = pruning_gap_bound(p, q);
    if !(lambda2 > g) {
        return Err(Error::Infeasible(format!("spectral gap {lambda2} does not exceed g(p, q) = {g}")));
    }
    Ok((lambda2 - g).powi(2) / 8.0)
}
