use crate::graph::{spectral_summary, Graph, Subgraph};
use crate::spectral::spectral_cluster;
use crate::{Error, Result};

// guards floor/ceil against products like 0.1 · 10 = 0.9999999999999998
const ROUNDING_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityPruned {
    pub subgraph: Subgraph,
    /// Edge indices (of the input graph) whose endpoints were deleted, in
    /// deletion order.
    pub triggering_edges: Vec<usize>,
    /// No surviving edge was left before all rounds ran.
    pub early_stop: bool,
}

/// Reliability pruning: `⌊(1 − α)|V|⌋` times, delete both endpoints of the
/// weakest edge still present. Equal magnitudes go to the lower edge index.
pub fn prune_reliability(g: &Graph, edge_mags: &[f64], alpha: f64) -> Result<ReliabilityPruned> {
    if edge_mags.len() != g.n_edges() {
        return Err(Error::DimensionMismatch { expected: g.n_edges(), found: edge_mags.len() });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param(format!("reliability proportion α = {alpha} must lie in (0, 1)")));
    }
    let rounds = ((1.0 - alpha) * g.n_vertices() as f64 + ROUNDING_SLACK).floor() as usize;
    let mut order: Vec<usize> = (0..g.n_edges()).collect();
    order.sort_by(|&a, &b| edge_mags[a].total_cmp(&edge_mags[b]).then(a.cmp(&b)));

    let mut alive = vec![true; g.n_vertices()];
    let mut triggering_edges = Vec::with_capacity(rounds);
    let mut next = order.into_iter();
    let mut early_stop = false;
    for _ in 0..rounds {
        match next.find(|&e| {
            let edge = g.edge(e);
            alive[edge.tail] && alive[edge.head]
        }) {
            Some(e) => {
                let edge = g.edge(e);
                alive[edge.tail] = false;
                alive[edge.head] = false;
                triggering_edges.push(e);
            }
            None => {
                early_stop = true;
                break;
            }
        }
    }
    let keep: Vec<usize> = (0..g.n_vertices()).filter(|&v| alive[v]).collect();
    Ok(ReliabilityPruned { subgraph: g.induced(&keep), triggering_edges, early_stop })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityPruned {
    pub subgraph: Subgraph,
    /// `λ2` of the output (0 for a single vertex).
    pub lambda2: f64,
    /// Spectral-clustering removals performed.
    pub rounds: usize,
    pub single_vertex: bool,
}

/// Connectivity pruning: while `λ2(H) < τ`, keep the largest component of
/// `H` and drop the spectral-clustering set `S` from it.
pub fn prune_connectivity(g: &Graph, tau: f64) -> Result<ConnectivityPruned> {
    if !(tau > 0.0) {
        return Err(Error::param(format!("connectivity threshold τ = {tau} must be positive")));
    }
    if g.n_vertices() == 0 {
        return Err(Error::degenerate("connectivity pruning received an empty graph"));
    }
    let mut current = Subgraph::identity(g);
    let mut rounds = 0;
    loop {
        if current.graph.connected_components().len() > 1 {
            current = current.restrict(&current.graph.largest_component());
        }
        if current.n_vertices() == 1 {
            return Ok(ConnectivityPruned { subgraph: current, lambda2: 0.0, rounds, single_vertex: true });
        }
        // eigenvalues alone are much cheaper than the sweep cut's eigenvectors
        let lambda2 = spectral_summary(&current.graph)?.spectral_gap;
        if lambda2 >= tau {
            return Ok(ConnectivityPruned { subgraph: current, lambda2, rounds, single_vertex: false });
        }
        let cut = spectral_cluster(&current.graph)?;
        let mut drop = vec![false; current.n_vertices()];
        cut.set.iter().for_each(|&v| drop[v] = true);
        let keep: Vec<usize> = (0..current.n_vertices()).filter(|&v| !drop[v]).collect();
        current = current.restrict(&keep);
        rounds += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LargeVertexSelection {
    /// Kept vertices, sorted.
    pub kept: Vec<usize>,
    /// Fewer than `⌈κ n⌉` candidates were available; all were kept.
    pub shortfall: bool,
}

/// Keeps the `⌈κ · n_original⌉` vertices of `vertices` with the smallest
/// intensities (`vertex_z` is indexed by vertex id; ties by id).
pub fn remove_large_vertices(vertices: &[usize], vertex_z: &[f64], kappa: f64, n_original: usize) -> Result<LargeVertexSelection> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::param(format!("keep proportion κ = {kappa} must lie in (0, 1]")));
    }
    let target = (kappa * n_original as f64 - ROUNDING_SLACK).ceil().max(0.0) as usize;
    let mut kept: Vec<usize> = vertices.to_vec();
    if target >= kept.len() {
        kept.sort_unstable();
        return Ok(LargeVertexSelection { shortfall: target > kept.len(), kept });
    }
    kept.sort_by(|&a, &b| vertex_z[a].total_cmp(&vertex_z[b]).then(a.cmp(&b)));
    kept.truncate(target);
    kept.sort_unstable();
    Ok(LargeVertexSelection { kept, shortfall: false })
}
