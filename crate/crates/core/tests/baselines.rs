use polarphase::baselines::{alternating_projections, oracle_full_lsq, oracle_vertex_lsq, AltProjParams};
use polarphase::ensemble::{
    erdos_renyi_design, gaussian_signal, measure, measure_with, NoiseModel, NoiseRealization, NoiseSpec,
};
use polarphase::experiments::median;
use polarphase::linalg::CVector;
use polarphase::recovery::{align_and_error, procedure_b, PruneParams};

const SEEDS: u64 = 20;

#[test]
fn polarized_frame_helps_alternating_projections() {
    let (mut ap_full, mut ap_vertex, mut proc_b) = (Vec::new(), Vec::new(), Vec::new());
    for seed in 0..SEEDS {
        let ens = erdos_renyi_design(32, 3.0, 8.0, seed).unwrap();
        let x = gaussian_signal(32, 100 + seed).unwrap();
        let data = measure(&ens, &x, NoiseSpec::new(NoiseModel::PostIntensity, 0.4), 200 + seed).unwrap();
        let err = |v: CVector| align_and_error(&v, &x).unwrap().1;
        let params = AltProjParams::default();
        ap_full.push(err(alternating_projections(&ens.full_frame(), &data.flattened(), &params).unwrap()));
        ap_vertex.push(err(alternating_projections(ens.phi_v(), &data.vertex_z, &params).unwrap()));
        proc_b.push(procedure_b(&ens, &data, &PruneParams::default()).map(|r| err(r.estimate_vector())).unwrap_or(f64::INFINITY));
    }
    let (full, vertex, b) = (median(ap_full).unwrap(), median(ap_vertex).unwrap(), median(proc_b).unwrap());
    println!("medians: altproj Φ {full:.3}, altproj Φ_V {vertex:.3}, Procedure B {b:.3}");
    assert!(full <= 1.5 * b, "altproj {full} vs Procedure B {b}");
    assert!(vertex > 0.5, "vertex-only altproj {vertex}");
}

#[test]
fn full_oracle_beats_vertex_oracle() {
    let (mut full, mut vertex) = (Vec::new(), Vec::new());
    for seed in 0..SEEDS {
        let ens = erdos_renyi_design(32, 3.0, 8.0, seed).unwrap();
        let x = gaussian_signal(32, 100 + seed).unwrap();
        let noise = NoiseRealization::sample(&ens, NoiseSpec::new(NoiseModel::PreModulus, 0.4), 300 + seed).unwrap();
        // the intensities themselves are not needed, only the shared noise draw
        measure_with(&ens, &x, &noise).unwrap();
        let linear = ens.linear_measurements(&x).unwrap() + CVector::from_column_slice(&noise.values);
        let nv = ens.n_vertices();
        let err = |v: CVector| align_and_error(&v, &x).unwrap().1;
        full.push(err(oracle_full_lsq(&ens.full_frame(), &linear).unwrap()));
        vertex.push(err(oracle_vertex_lsq(ens.phi_v(), &linear.rows(0, nv).into_owned()).unwrap()));
    }
    let (f, v) = (median(full).unwrap(), median(vertex).unwrap());
    assert!(f <= v, "full {f} vs vertex {v}");
}
