//! Relative phase from edge intensities.
//!
//! With `ζ = e^{2πi/3}`, every pair `a, b ∈ C` satisfies
//! `conj(a)·b = (1/3) Σ_k ζ^k |a + ζ^{−k} b|²`. Taking `a = ⟨x,φ_i⟩`,
//! `b = ⟨x,φ_j⟩` the three edge intensities `|⟨x, φ_i + ζ^k φ_j⟩|²` determine
//! `conj(⟨x,φ_i⟩)⟨x,φ_j⟩`, whose phase is the relative phase along the edge.

use crate::ensemble::{zeta_pow, IntensityData, MeasurementEnsemble};
use crate::graph::Edge;
use crate::{Complex64, Error, Result};

/// `(1/3)(z0 + ζ z1 + ζ² z2)`.
pub fn polarize(z0: f64, z1: f64, z2: f64) -> Complex64 {
    (zeta_pow(0) * z0 + zeta_pow(1) * z1 + zeta_pow(2) * z2) / 3.0
}

/// Estimate of `conj(⟨x,φ_tail⟩)⟨x,φ_head⟩` for one oriented edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEstimate {
    pub edge: Edge,
    pub value: Complex64,
}

impl EdgeEstimate {
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    /// The same estimate for the opposite orientation.
    pub fn reversed(&self) -> Self {
        Self { edge: Edge::new(self.edge.head, self.edge.tail), value: self.value.conj() }
    }
}

/// One estimate per edge, aligned with `ens.graph().edges()`.
pub fn edge_estimates(ens: &MeasurementEnsemble, data: &IntensityData) -> Result<Vec<EdgeEstimate>> {
    data.check_aligned(ens)?;
    Ok(ens
        .graph()
        .edges()
        .iter()
        .zip(&data.edge_z)
        .map(|(&edge, z)| EdgeEstimate { edge, value: polarize(z[0], z[1], z[2]) })
        .collect())
}

/// `value / |value|`.
pub fn relative_phase(e: &EdgeEstimate) -> Result<Complex64> {
    let r = e.value.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::ZeroEdge { tail: e.edge.tail, head: e.edge.head });
    }
    Ok(e.value / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{gaussian_signal, measure_with, NoiseModel, NoiseRealization, NoiseSpec};
    use crate::graph::gen_erdos_renyi;
    use crate::linalg::CVector;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // |a + ζ^{-k} b|² evaluated directly
    fn rhs(a: Complex64, b: Complex64) -> Complex64 {
        let z: Vec<f64> = (0..3).map(|k| (a + zeta_pow(k).conj() * b).norm_sqr()).collect();
        polarize(z[0], z[1], z[2])
    }

    #[test]
    fn unit_pair() {
        let z: Vec<f64> = (0..3).map(|k| (c(1.0, 0.0) + zeta_pow(k).conj()).norm_sqr()).collect();
        assert!((z[0] - 4.0).abs() < 1e-15 && (z[1] - 1.0).abs() < 1e-15 && (z[2] - 1.0).abs() < 1e-15);
        assert!((polarize(4.0, 1.0, 1.0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_left_factor() {
        assert!(rhs(c(0.0, 0.0), c(3.0, -2.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn identity_holds(ar in -7.0..7.0f64, ai in -7.0..7.0f64, br in -7.0..7.0f64, bi in -7.0..7.0f64) {
            let (a, b) = (c(ar, ai), c(br, bi));
            prop_assert!((rhs(a, b) - a.conj() * b).norm() < 1e-12);
        }
    }

    fn fixture(model: NoiseModel, sigma: f64) -> (MeasurementEnsemble, CVector, NoiseRealization) {
        let g = gen_erdos_renyi(8, 0.5, 11).unwrap();
        let ens = MeasurementEnsemble::gaussian(g, 4, 12).unwrap();
        let x = gaussian_signal(4, 13).unwrap();
        let noise = NoiseRealization::sample(&ens, NoiseSpec::new(model, sigma), 14).unwrap();
        (ens, x, noise)
    }

    #[test]
    fn noiseless_estimates_match_inner_products() {
        let (ens, x, noise) = fixture(NoiseModel::PostIntensity, 0.0);
        let data = measure_with(&ens, &x, &noise).unwrap();
        let a = ens.vertex_coefficients(&x).unwrap();
        let est = edge_estimates(&ens, &data).unwrap();
        assert_eq!(est.len(), ens.graph().n_edges());
        for e in &est {
            let truth = a[e.edge.tail].conj() * a[e.edge.head];
            assert!((e.value - truth).norm() < 1e-10);
        }
    }

    #[test]
    fn reversal_conjugates() {
        let (ens, x, noise) = fixture(NoiseModel::PreModulus, 0.3);
        let data = measure_with(&ens, &x, &noise).unwrap();
        let est = edge_estimates(&ens, &data).unwrap();
        let a = ens.vertex_coefficients(&x).unwrap();
        for e in &est {
            let r = e.reversed();
            assert_eq!(r.value, e.value.conj());
            let truth = a[r.edge.tail].conj() * a[r.edge.head];
            assert!(((r.value - truth).conj() - (e.value - a[e.edge.tail].conj() * a[e.edge.head])).norm() < 1e-12);
        }
    }

    #[test]
    fn orthogonal_vertex_kills_its_edges() {
        let (ens, x, _) = fixture(NoiseModel::PostIntensity, 0.0);
        let i = (0..ens.n_vertices()).find(|&v| ens.graph().degree(v) > 0).unwrap();
        let phi = ens.phi_v().column(i).into_owned();
        let x_perp = &x - &phi * (phi.dotc(&x) / phi.norm_squared());
        let data = crate::ensemble::measure(&ens, &x_perp, NoiseSpec::noiseless(), 0).unwrap();
        for e in edge_estimates(&ens, &data).unwrap() {
            if e.edge.tail == i || e.edge.head == i {
                assert!(e.magnitude() < 1e-10);
            }
        }
    }

    #[test]
    fn edge_error_is_polarized_noise() {
        let (ens, x, noise) = fixture(NoiseModel::PostIntensity, 0.5);
        let data = measure_with(&ens, &x, &noise).unwrap();
        let a = ens.vertex_coefficients(&x).unwrap();
        let nv = ens.n_vertices();
        for (idx, e) in edge_estimates(&ens, &data).unwrap().iter().enumerate() {
            let truth = a[e.edge.tail].conj() * a[e.edge.head];
            let nu = &noise.values[nv + 3 * idx..nv + 3 * idx + 3];
            let expect = (zeta_pow(0) * nu[0].re + zeta_pow(1) * nu[1].re + zeta_pow(2) * nu[2].re) / 3.0;
            assert!((e.value - truth - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn misaligned_data_is_an_index_error() {
        let (ens, x, noise) = fixture(NoiseModel::PostIntensity, 0.0);
        let mut data = measure_with(&ens, &x, &noise).unwrap();
        data.edge_z.pop();
        assert!(matches!(edge_estimates(&ens, &data), Err(Error::Index(_))));
    }

    #[test]
    fn relative_phase_values() {
        let e = |v| EdgeEstimate { edge: Edge::new(0, 1), value: v };
        assert_eq!(relative_phase(&e(c(3.0, 0.0))).unwrap(), c(1.0, 0.0));
        assert!((relative_phase(&e(c(0.0, -2.0))).unwrap() - c(0.0, -1.0)).norm() < 1e-16);
        assert!(matches!(relative_phase(&e(c(0.0, 0.0))), Err(Error::ZeroEdge { tail: 0, head: 1 })));
    }

    proptest! {
        #[test]
        fn relative_phase_has_unit_modulus(re in -1e3..1e3f64, im in -1e3..1e3f64) {
            prop_assume!(re != 0.0 || im != 0.0);
            let e = EdgeEstimate { edge: Edge::new(0, 1), value: c(re, im) };
            prop_assert!((relative_phase(&e).unwrap().norm() - 1.0).abs() < 1e-15);
        }
    }
}
