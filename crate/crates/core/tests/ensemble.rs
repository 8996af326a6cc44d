use polarphase::ensemble::{
    dft_full_spark_frame, erdos_renyi_design, gaussian_frame, gaussian_signal, measure, MeasurementEnsemble,
    NoiseModel, NoiseSpec,
};
use polarphase::graph::Graph;
use polarphase::linalg::{CMatrix, CVector};
use polarphase::Complex64;

#[test]
fn gaussian_columns_have_unit_mean_square_norm() {
    let phi = gaussian_frame(64, 10_000, 1).unwrap();
    let mean = (0..phi.ncols()).map(|j| phi.column(j).norm_squared()).sum::<f64>() / phi.ncols() as f64;
    assert!((0.97..=1.03).contains(&mean), "{mean}");
}

#[test]
fn gaussian_entry_covariance() {
    let dim = 4;
    let phi = gaussian_frame(dim, 100_000, 2).unwrap();
    let n = phi.ncols() as f64;
    let entries: Vec<Complex64> = (0..phi.ncols()).map(|j| phi[(1, j)]).collect();
    let (mr, mi) = entries.iter().fold((0.0, 0.0), |(a, b), z| (a + z.re / n, b + z.im / n));
    let var_re = entries.iter().map(|z| (z.re - mr).powi(2)).sum::<f64>() / (n - 1.0);
    let var_im = entries.iter().map(|z| (z.im - mi).powi(2)).sum::<f64>() / (n - 1.0);
    let cov = entries.iter().map(|z| (z.re - mr) * (z.im - mi)).sum::<f64>() / (n - 1.0);
    let target = 1.0 / (2.0 * dim as f64);
    assert!((var_re / target - 1.0).abs() < 0.05, "{var_re}");
    assert!((var_im / target - 1.0).abs() < 0.05, "{var_im}");
    assert!(cov.abs() < 0.05 * target, "{cov}");
}

#[test]
fn scalar_frame_is_bit_reproducible() {
    let a = gaussian_frame(1, 1, 99).unwrap();
    let b = gaussian_frame(1, 1, 99).unwrap();
    assert_eq!(a[(0, 0)].re.to_bits(), b[(0, 0)].re.to_bits());
    assert_eq!(a[(0, 0)].im.to_bits(), b[(0, 0)].im.to_bits());
}

fn det2(m: &CMatrix, a: usize, b: usize) -> Complex64 {
    m[(0, a)] * m[(1, b)] - m[(0, b)] * m[(1, a)]
}

#[test]
fn dft_frame_is_full_spark() {
    let phi = dft_full_spark_frame(2, 3).unwrap();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        assert!(det2(&phi, a, b).norm() > 0.1);
    }
    let dim = 5;
    let phi = dft_full_spark_frame(dim, dim + 1).unwrap();
    for skip in 0..=dim {
        let cols: Vec<usize> = (0..=dim).filter(|&c| c != skip).collect();
        let sub = CMatrix::from_fn(dim, dim, |r, c| phi[(r, cols[c])]);
        let sv = sub.singular_values();
        assert!(sv.min() > 1e-6, "omitting column {skip}: σ_min {}", sv.min());
    }
}

#[test]
fn measurement_count_matches_graph() {
    for seed in 0..10 {
        let ens = erdos_renyi_design(6, 3.0, 4.0, seed).unwrap();
        assert_eq!(ens.n_measurements(), ens.n_vertices() + 3 * ens.graph().n_edges());
        assert_eq!(ens.full_frame().ncols(), ens.n_measurements());
    }
}

#[test]
fn noiseless_measurement_ignores_seed_and_global_phase() {
    let ens = erdos_renyi_design(8, 3.0, 4.0, 5).unwrap();
    let x = gaussian_signal(8, 6).unwrap();
    let a = measure(&ens, &x, NoiseSpec::noiseless(), 1).unwrap();
    let b = measure(&ens, &x, NoiseSpec::noiseless(), 2).unwrap();
    assert_eq!(a, b);
    for theta in [0.3, 1.7, -2.9, 4.0] {
        let rotated = &x * Complex64::from_polar(1.0, theta);
        let c = measure(&ens, &rotated, NoiseSpec::noiseless(), 0).unwrap();
        for (u, v) in a.flattened().iter().zip(c.flattened()) {
            assert!((u - v).abs() < 1e-12);
        }
    }
}

#[test]
fn post_intensity_noise_variance() {
    let dim = 8;
    let ens = MeasurementEnsemble::gaussian(Graph::complete(2), dim, 7).unwrap();
    let x = gaussian_signal(dim, 8).unwrap();
    let clean = measure(&ens, &x, NoiseSpec::noiseless(), 0).unwrap().flattened();
    let mut diffs = Vec::new();
    for seed in 0..2000 {
        let noisy = measure(&ens, &x, NoiseSpec::new(NoiseModel::PostIntensity, 0.4), seed).unwrap().flattened();
        diffs.extend(noisy.iter().zip(&clean).map(|(a, b)| a - b));
    }
    assert_eq!(diffs.len(), 10_000);
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!((var / 0.02 - 1.0).abs() < 0.1, "variance {var}");
}

#[test]
fn vertex_intensities_match_direct_inner_products() {
    let ens = erdos_renyi_design(6, 2.0, 3.0, 9).unwrap();
    let phi = ens.phi_v();
    // a signal along the first frame vector
    let x: CVector = phi.column(0).into_owned();
    let data = measure(&ens, &x, NoiseSpec::noiseless(), 0).unwrap();
    for i in 0..ens.n_vertices() {
        let direct: Complex64 = (0..6).map(|m| phi[(m, i)].conj() * x[m]).sum();
        assert!((data.vertex_z[i] - direct.norm_sqr()).abs() < 1e-12);
    }
}
