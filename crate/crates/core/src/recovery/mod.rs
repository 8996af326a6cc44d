//! Reconstruction pipelines and their building blocks.

mod procedure;
mod prune;
mod uniformity;

pub use procedure::{procedure_a, procedure_b};
pub use prune::{
    prune_connectivity, prune_reliability, remove_large_vertices, ConnectivityPruned, LargeVertexSelection,
    ReliabilityPruned,
};
pub use uniformity::estimate_projective_uniformity;

use serde::{Deserialize, Serialize};

use crate::linalg::{CMatrix, CVector, LeastSquares};
use crate::{Complex64, Error, Result};

/// Success threshold on aligned relative error for noiseless sweeps.
pub const SUCCESS_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PruneParams {
    /// Reliability proportion; `⌊(1 − α)|V|⌋` deletion rounds.
    pub alpha: f64,
    /// Spectral-gap target for connectivity pruning.
    pub tau: f64,
    /// Fraction of the original vertices kept after dropping the largest
    /// intensities.
    pub kappa: f64,
    /// Vertices with intensity below this are deleted in the noiseless
    /// procedure.
    pub zero_tol: f64,
}

impl Default for PruneParams {
    fn default() -> Self {
        Self { alpha: 0.9925, tau: 0.1, kappa: 0.9, zero_tol: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageVertices {
    pub stage: String,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RecoveryFlags {
    /// Vertices (original indices) whose synchronization eigenvector
    /// coordinate vanished.
    pub zero_eigenvector_coords: Vec<usize>,
    /// Reliability pruning ran out of edges before finishing its rounds.
    pub reliability_early_stop: bool,
    /// Connectivity pruning shrank the graph to one vertex.
    pub connectivity_single_vertex: bool,
    /// Fewer than `⌈κ|V|⌉` vertices survived pruning, so none were dropped
    /// by intensity.
    pub kappa_shortfall: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub method: String,
    pub estimate: Vec<Complex64>,
    /// Filled in by [`RecoveryReport::score`] when the truth is known.
    pub aligned_error: Option<f64>,
    pub global_phase: Option<f64>,
    /// Nested vertex sets from the full vertex set down to the one used for
    /// reconstruction, sorted.
    pub surviving_vertices: Vec<StageVertices>,
    pub spectral_gap_final: Option<f64>,
    /// Smallest edge-estimate magnitude in the final graph.
    pub min_edge_magnitude: Option<f64>,
    /// Smallest singular value of the frame used in the final solve.
    pub sigma_min: f64,
    pub connectivity_rounds: usize,
    pub flags: RecoveryFlags,
    pub timings: Vec<StageTiming>,
}

impl RecoveryReport {
    pub fn estimate_vector(&self) -> CVector {
        CVector::from_column_slice(&self.estimate)
    }

    /// Records the aligned error against `truth`.
    pub fn score(&mut self, truth: &CVector) -> Result<f64> {
        let (theta, err) = align_and_error(&self.estimate_vector(), truth)?;
        self.aligned_error = Some(err);
        self.global_phase = Some(theta);
        Ok(err)
    }

    pub fn total_seconds(&self) -> f64 {
        self.timings.iter().map(|t| t.seconds).sum()
    }

    pub fn final_vertices(&self) -> &[usize] {
        self.surviving_vertices.last().map(|s| s.vertices.as_slice()).unwrap_or(&[])
    }
}

/// `x̃ = (Φ Φ*)^{-1} Φ y`, minimizing `‖Φ* x − y‖`; fails if the smallest
/// singular value of `Φ` is at most [`crate::linalg::RANK_TOL`].
pub fn least_squares_reconstruct(phi_sub: &CMatrix, y: &CVector) -> Result<CVector> {
    LeastSquares::new(phi_sub)?.solve(y)
}

/// Optimal global phase `θ ∈ [0, 2π)` and `min_θ ‖x̃ − e^{iθ}x‖ / ‖x‖`.
pub fn align_and_error(estimate: &CVector, truth: &CVector) -> Result<(f64, f64)> {
    if estimate.len() != truth.len() {
        return Err(Error::DimensionMismatch { expected: truth.len(), found: estimate.len() });
    }
    let norm = truth.norm();
    if !(norm > 0.0) {
        return Err(Error::param("aligned error needs a nonzero truth vector"));
    }
    let s = truth.dotc(estimate);
    let (theta, rot) = if s.norm() > 0.0 {
        (s.arg().rem_euclid(2.0 * std::f64::consts::PI), s / s.norm())
    } else {
        (0.0, Complex64::new(1.0, 0.0))
    };
    Ok((theta, (estimate - truth * rot).norm() / norm))
}

/// Columns `cols` of `phi`, in the given order.
pub(crate) fn select_columns(phi: &CMatrix, cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(phi.nrows(), cols.len(), |r, c| phi[(r, cols[c])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{gaussian_frame, gaussian_signal};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn consistent_system_is_solved_exactly() {
        let phi = gaussian_frame(5, 12, 1).unwrap();
        let x = gaussian_signal(5, 2).unwrap();
        let y = phi.ad_mul(&x);
        let xt = least_squares_reconstruct(&phi, &y).unwrap();
        assert!((xt - x).norm() < 1e-10);
    }

    #[test]
    fn square_system_matches_inverse() {
        let phi = gaussian_frame(4, 4, 3).unwrap();
        let y = gaussian_signal(4, 4).unwrap();
        let xt = least_squares_reconstruct(&phi, &y).unwrap();
        let direct = phi.adjoint().try_inverse().unwrap() * &y;
        assert!((xt - direct).norm() < 1e-10);
    }

    #[test]
    fn residual_satisfies_normal_equations() {
        let phi = gaussian_frame(4, 15, 5).unwrap();
        let y = gaussian_signal(15, 6).unwrap();
        let xt = least_squares_reconstruct(&phi, &y).unwrap();
        let residual = phi.ad_mul(&xt) - &y;
        assert!((&phi * residual).norm() < 1e-9);
    }

    #[test]
    fn rank_deficient_reconstruction_fails() {
        let mut phi = gaussian_frame(3, 5, 1).unwrap();
        phi.row_mut(2).fill(c(0.0, 0.0));
        let y = gaussian_signal(5, 2).unwrap();
        assert!(matches!(least_squares_reconstruct(&phi, &y), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn alignment_closed_form() {
        let x = gaussian_signal(6, 1).unwrap();
        let (theta, err) = align_and_error(&(&x * c(0.0, 1.0)), &x).unwrap();
        assert!(err < 1e-15);
        assert!((theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let (theta, err) = align_and_error(&CVector::zeros(6), &x).unwrap();
        assert_eq!(theta, 0.0);
        assert!((err - 1.0).abs() < 1e-15);
        assert!(align_and_error(&x, &CVector::zeros(6)).is_err());
    }

    #[test]
    fn closed_form_beats_grid_search() {
        for seed in 0..20 {
            let x = gaussian_signal(5, seed).unwrap();
            let xt = gaussian_signal(5, seed + 1000).unwrap();
            let (_, err) = align_and_error(&xt, &x).unwrap();
            let grid = (0..10_000)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / 10_000.0;
                    (&xt - &x * Complex64::from_polar(1.0, t)).norm() / x.norm()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(err <= grid + 1e-9);
        }
    }

    #[test]
    fn default_parameters() {
        let p = PruneParams::default();
        assert_eq!((p.alpha, p.tau, p.kappa, p.zero_tol), (0.9925, 0.1, 0.9, 1e-4));
    }
}
