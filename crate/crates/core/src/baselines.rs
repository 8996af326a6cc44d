//! Comparison methods: alternating projections and least-squares phase
//! oracles.

use serde::{Deserialize, Serialize};

use crate::linalg::{CMatrix, CVector, LeastSquares};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AltProjParams {
    pub max_iter: usize,
    /// Stop once an iteration moves `y` by less than this (Euclidean norm).
    pub move_tol: f64,
}

impl Default for AltProjParams {
    fn default() -> Self {
        Self { max_iter: 100, move_tol: 1e-3 }
    }
}

impl AltProjParams {
    fn validate(&self) -> Result<()> {
        if self.max_iter == 0 || !(self.move_tol > 0.0) {
            return Err(Error::param(format!(
                "alternating projections need max_iter > 0 and move_tol > 0, got {} and {}",
                self.max_iter, self.move_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AltProjOutcome {
    pub estimate: CVector,
    pub iterations: usize,
    pub converged: bool,
}

/// Alternating projections between `range(Φ*)` and the set of vectors with
/// entry magnitudes `√z`, starting from positive phases.
pub fn alternating_projections(phi: &CMatrix, z: &[f64], params: &AltProjParams) -> Result<CVector> {
    let b = magnitudes(phi, z)?;
    let y0 = CVector::from_iterator(b.len(), b.iter().map(|&m| Complex64::new(m, 0.0)));
    Ok(alternating_projections_from(phi, z, &y0, params)?.estimate)
}

/// As [`alternating_projections`], from a caller-supplied starting point
/// `y0` (an `N`-vector). Reports the number of iterations taken.
pub fn alternating_projections_from(
    phi: &CMatrix,
    z: &[f64],
    y0: &CVector,
    params: &AltProjParams,
) -> Result<AltProjOutcome> {
    params.validate()?;
    let b = magnitudes(phi, z)?;
    if y0.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), found: y0.len() });
    }
    let lsq = LeastSquares::new(phi)?;
    let mut y = y0.clone();
    let mut p = lsq.project(&y);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        let next = CVector::from_fn(b.len(), |i, _| {
            let pi = p[i];
            let phase = if pi.norm() > 0.0 {
                pi / pi.norm()
            } else if y[i].norm() > 0.0 {
                y[i] / y[i].norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            phase * b[i]
        });
        let moved = (&next - &y).norm();
        y = next;
        p = lsq.project(&y);
        if moved < params.move_tol {
            converged = true;
            break;
        }
    }
    Ok(AltProjOutcome { estimate: lsq.solve(&p)?, iterations, converged })
}

fn magnitudes(phi: &CMatrix, z: &[f64]) -> Result<Vec<f64>> {
    if z.len() != phi.ncols() {
        return Err(Error::DimensionMismatch { expected: phi.ncols(), found: z.len() });
    }
    Ok(z.iter().map(|&v| v.max(0.0).sqrt()).collect())
}

/// Least-squares estimate from noisy linear measurements `Φ_V* x + ν_V`.
pub fn oracle_vertex_lsq(phi_v: &CMatrix, linear: &CVector) -> Result<CVector> {
    oracle_lsq(phi_v, linear)
}

/// Least-squares estimate from noisy linear measurements `Φ* x + ν` over the
/// whole ensemble.
pub fn oracle_full_lsq(phi_full: &CMatrix, linear: &CVector) -> Result<CVector> {
    oracle_lsq(phi_full, linear)
}

fn oracle_lsq(phi: &CMatrix, linear: &CVector) -> Result<CVector> {
    if linear.len() != phi.ncols() {
        return Err(Error::DimensionMismatch { expected: phi.ncols(), found: linear.len() });
    }
    LeastSquares::new(phi)?.solve(linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{erdos_renyi_design, gaussian_frame, gaussian_signal};
    use crate::linalg::analysis;
    use crate::recovery::{align_and_error, least_squares_reconstruct};

    #[test]
    fn range_projection_is_idempotent() {
        let phi = gaussian_frame(5, 20, 1).unwrap();
        let lsq = LeastSquares::new(&phi).unwrap();
        let y = CVector::from_fn(20, |i, _| Complex64::new(i as f64, 1.0 - i as f64 * 0.3));
        let p = lsq.project(&y);
        assert!((lsq.project(&p) - &p).norm() < 1e-12 * p.norm().max(1.0));
    }

    #[test]
    fn true_phases_are_a_fixed_point() {
        let ens = erdos_renyi_design(8, 3.0, 4.0, 3).unwrap();
        let phi = ens.full_frame();
        let x = gaussian_signal(8, 4).unwrap();
        let y0 = analysis(&phi, &x);
        let z: Vec<f64> = y0.iter().map(|c| c.norm_sqr()).collect();
        let out = alternating_projections_from(&phi, &z, &y0, &AltProjParams::default()).unwrap();
        assert!(out.iterations <= 2);
        assert!(align_and_error(&out.estimate, &x).unwrap().1 < 1e-10);
    }

    #[test]
    fn iterates_stay_on_the_magnitude_set() {
        let phi = gaussian_frame(4, 30, 5).unwrap();
        let x = gaussian_signal(4, 6).unwrap();
        let z: Vec<f64> = analysis(&phi, &x).iter().map(|c| c.norm_sqr()).collect();
        let params = AltProjParams { max_iter: 1, move_tol: 1e-3 };
        let y0 = CVector::from_iterator(30, z.iter().map(|&v| Complex64::new(v.sqrt(), 0.0)));
        let out = alternating_projections_from(&phi, &z, &y0, &params).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.estimate.len(), 4);
    }

    #[test]
    fn negative_intensities_are_clamped() {
        let phi = gaussian_frame(2, 8, 5).unwrap();
        let z = vec![-1.0; 8];
        let est = alternating_projections(&phi, &z, &AltProjParams::default()).unwrap();
        assert!(est.norm() < 1e-12);
    }

    #[test]
    fn oracles_are_exact_without_noise_and_linear_in_noise() {
        let phi = gaussian_frame(6, 18, 7).unwrap();
        let x = gaussian_signal(6, 8).unwrap();
        let clean = analysis(&phi, &x);
        assert!((oracle_vertex_lsq(&phi, &clean).unwrap() - &x).norm() < 1e-10 * x.norm());
        assert!((oracle_full_lsq(&phi, &clean).unwrap() - &x).norm() < 1e-10 * x.norm());

        let nu = CVector::from_fn(18, |i, _| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()) * 0.01);
        let e1 = (oracle_vertex_lsq(&phi, &(&clean + &nu)).unwrap() - &x).norm();
        let e2 = (oracle_vertex_lsq(&phi, &(&clean + &nu * Complex64::new(2.0, 0.0))).unwrap() - &x).norm();
        assert!((e2 - 2.0 * e1).abs() < 1e-9);

        let y = &clean + &nu;
        assert_eq!(oracle_vertex_lsq(&phi, &y).unwrap(), least_squares_reconstruct(&phi, &y).unwrap());
        assert!(matches!(oracle_full_lsq(&phi, &clean.rows(0, 5).into_owned()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bad_params_are_rejected() {
        let phi = gaussian_frame(2, 8, 5).unwrap();
        let params = AltProjParams { max_iter: 0, move_tol: 1e-3 };
        assert!(alternating_projections(&phi, &[1.0; 8], &params).is_err());
    }
}
