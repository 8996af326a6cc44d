use std::collections::VecDeque;
use std::time::Instant;

use super::prune::{prune_connectivity, prune_reliability, remove_large_vertices};
use super::{select_columns, PruneParams, RecoveryFlags, RecoveryReport, StageTiming, StageVertices};
use crate::ensemble::{IntensityData, MeasurementEnsemble};
use crate::graph::Subgraph;
use crate::linalg::{CVector, LeastSquares};
use crate::polarization::{edge_estimates, relative_phase, EdgeEstimate};
use crate::spectral::{angular_synchronization, connection_laplacian};
use crate::{Complex64, Error, Result};

/// Vertex intensities below this are treated as invalid noiseless input.
const NEGATIVE_SLACK: f64 = 1e-12;

struct Stopwatch {
    last: Instant,
    timings: Vec<StageTiming>,
}

impl Stopwatch {
    fn start() -> Self {
        Self { last: Instant::now(), timings: Vec::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(StageTiming { stage: stage.to_string(), seconds: (now - self.last).as_secs_f64() });
        self.last = now;
    }
}

fn stage(stage: &str, vertices: &[usize]) -> StageVertices {
    StageVertices { stage: stage.to_string(), vertices: vertices.to_vec() }
}

fn reconstruct(ens: &MeasurementEnsemble, vertices: &[usize], coeffs: &[Complex64]) -> Result<(CVector, f64)> {
    let phi = select_columns(ens.phi_v(), vertices);
    let lsq = LeastSquares::new(&phi).map_err(|e| Error::Unrecoverable {
        stage: "reconstruction",
        reason: e.to_string(),
    })?;
    let x = lsq.solve(&CVector::from_column_slice(coeffs))?;
    Ok((x, lsq.sigma_min()))
}

/// Noiseless reconstruction by phase propagation.
///
/// Deletes vertices with intensity below `params.zero_tol`, takes the
/// largest remaining component (it must have at least `M` vertices),
/// propagates relative phases breadth-first from its smallest vertex, and
/// solves for `x` with magnitudes `√z_i`.
pub fn procedure_a(ens: &MeasurementEnsemble, data: &IntensityData, params: &PruneParams) -> Result<RecoveryReport> {
    data.check_aligned(ens)?;
    if let Some(i) = data.vertex_z.iter().position(|&z| z < -NEGATIVE_SLACK) {
        return Err(Error::param(format!(
            "vertex {i} has negative intensity {}; noiseless reconstruction needs z ≥ 0",
            data.vertex_z[i]
        )));
    }
    let mut clock = Stopwatch::start();
    let g = ens.graph();
    let dim = ens.dim();
    let all: Vec<usize> = (0..g.n_vertices()).collect();
    let nonzero: Vec<usize> = all.iter().copied().filter(|&i| data.vertex_z[i] >= params.zero_tol).collect();
    let reduced = g.induced(&nonzero);
    let component = reduced.restrict(&reduced.graph.largest_component());
    clock.lap("components");
    if component.n_vertices() < dim || component.n_vertices() == 0 {
        return Err(Error::Unrecoverable {
            stage: "component",
            reason: format!("largest component has {} vertices, need {dim}", component.n_vertices()),
        });
    }

    let estimates = edge_estimates(ens, data)?;
    let phases = propagate_phases(&component, &estimates)?;
    clock.lap("propagation");

    let coeffs: Vec<Complex64> = component
        .vertex_map
        .iter()
        .zip(&phases)
        .map(|(&v, &w)| w * data.vertex_z[v].max(0.0).sqrt())
        .collect();
    let (x, sigma_min) = reconstruct(ens, &component.vertex_map, &coeffs)?;
    clock.lap("reconstruction");

    let min_edge = component.edge_map.iter().map(|&e| estimates[e].magnitude()).fold(f64::INFINITY, f64::min);
    Ok(RecoveryReport {
        method: "procedure-a".into(),
        estimate: x.iter().copied().collect(),
        aligned_error: None,
        global_phase: None,
        surviving_vertices: vec![
            stage("all", &all),
            stage("nonzero", &nonzero),
            stage("component", &component.vertex_map),
            stage("reconstruction", &component.vertex_map),
        ],
        spectral_gap_final: None,
        min_edge_magnitude: min_edge.is_finite().then_some(min_edge),
        sigma_min,
        connectivity_rounds: 0,
        flags: RecoveryFlags::default(),
        timings: clock.timings,
    })
}

/// Breadth-first phase propagation over a connected subgraph, rooted at
/// local vertex 0 with phase `+1`: `phase(head) = ρ · phase(tail)`.
fn propagate_phases(component: &Subgraph, estimates: &[EdgeEstimate]) -> Result<Vec<Complex64>> {
    let g = &component.graph;
    let mut phase: Vec<Option<Complex64>> = vec![None; g.n_vertices()];
    phase[0] = Some(Complex64::new(1.0, 0.0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let pv = phase[v].expect("queued vertices have phases");
        for &(w, e) in g.neighbors(v) {
            if phase[w].is_some() {
                continue;
            }
            let local = g.edge(e);
            let rho = relative_phase(&estimates[component.edge_map[e]])?;
            // local orientation mirrors the parent edge's orientation
            let pw = if local.tail == v { pv * rho } else { pv * rho.conj() };
            phase[w] = Some(pw);
            queue.push_back(w);
        }
    }
    Ok(phase.into_iter().map(|p| p.expect("component is connected")).collect())
}

/// Noisy reconstruction.
///
/// Polarize every edge, prune for reliability (`α`), keep the largest
/// surviving component, prune for connectivity (`τ`), synchronize phases over
/// the connection Laplacian, drop all but the `⌈κ|V|⌉` smallest vertex
/// intensities, and solve for `x` with magnitudes `√max(z_i, 0)`.
pub fn procedure_b(ens: &MeasurementEnsemble, data: &IntensityData, params: &PruneParams) -> Result<RecoveryReport> {
    data.check_aligned(ens)?;
    let mut clock = Stopwatch::start();
    let g = ens.graph();
    let dim = ens.dim();
    let all: Vec<usize> = (0..g.n_vertices()).collect();

    let estimates = edge_estimates(ens, data)?;
    let mags: Vec<f64> = estimates.iter().map(EdgeEstimate::magnitude).collect();
    clock.lap("polarization");

    let reliable = prune_reliability(g, &mags, params.alpha)?;
    clock.lap("reliability");
    let survivors = reliable.subgraph.vertex_map.clone();

    let component = reliable.subgraph.restrict(&reliable.subgraph.graph.largest_component());
    if component.n_vertices() == 0 {
        return Err(Error::Unrecoverable { stage: "reliability", reason: "no vertices survived".into() });
    }
    let connected = prune_connectivity(&component.graph, params.tau)
        .map_err(|e| Error::Unrecoverable { stage: "connectivity", reason: e.to_string() })?;
    let kept = component.then(&connected.subgraph);
    clock.lap("connectivity");
    if kept.n_vertices() < dim.max(2) {
        return Err(Error::Unrecoverable {
            stage: "connectivity",
            reason: format!("{} vertices left after pruning, need {}", kept.n_vertices(), dim.max(2)),
        });
    }

    let local_estimates: Vec<EdgeEstimate> = kept
        .graph
        .edges()
        .iter()
        .zip(&kept.edge_map)
        .map(|(&edge, &parent)| EdgeEstimate { edge, value: estimates[parent].value })
        .collect();
    let cl = connection_laplacian(&kept.graph, &local_estimates)
        .map_err(|e| Error::Unrecoverable { stage: "synchronization", reason: e.to_string() })?;
    let sync = angular_synchronization(&cl);
    clock.lap("synchronization");

    let selection = remove_large_vertices(&kept.vertex_map, &data.vertex_z, params.kappa, g.n_vertices())?;
    let phase_of = |v: usize| {
        let local = kept.vertex_map.binary_search(&v).expect("selection is a subset of V'");
        sync.phases[local]
    };
    let coeffs: Vec<Complex64> =
        selection.kept.iter().map(|&v| phase_of(v) * data.vertex_z[v].max(0.0).sqrt()).collect();
    let (x, sigma_min) = reconstruct(ens, &selection.kept, &coeffs)?;
    clock.lap("reconstruction");

    let min_edge = kept.edge_map.iter().map(|&e| mags[e]).fold(f64::INFINITY, f64::min);
    Ok(RecoveryReport {
        method: "procedure-b".into(),
        estimate: x.iter().copied().collect(),
        aligned_error: None,
        global_phase: None,
        surviving_vertices: vec![
            stage("all", &all),
            stage("reliability", &survivors),
            stage("connectivity", &kept.vertex_map),
            stage("reconstruction", &selection.kept),
        ],
        spectral_gap_final: Some(connected.lambda2),
        min_edge_magnitude: min_edge.is_finite().then_some(min_edge),
        sigma_min,
        connectivity_rounds: connected.rounds,
        flags: RecoveryFlags {
            zero_eigenvector_coords: sync.zero_coordinates.iter().map(|&i| kept.vertex_map[i]).collect(),
            reliability_early_stop: reliable.early_stop,
            connectivity_single_vertex: connected.single_vertex,
            kappa_shortfall: selection.shortfall,
        },
        timings: clock.timings,
    })
}
