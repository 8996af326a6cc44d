//! Spectral clustering sweep cuts, the connection Laplacian, and angular
//! synchronization of vertex phases.

use std::f64::consts::PI;

use crate::graph::{normalized_laplacian, Graph};
use crate::linalg::{fix_phase, fix_sign, psd_bottom_eigenpair, sym_eigen_sorted, CMatrix};
use crate::polarization::{relative_phase, EdgeEstimate};
use crate::{Complex64, Error, Result};

/// Coordinates of the bottom eigenvector at or below this magnitude carry no
/// phase and are flagged.
pub const ZERO_COORD_TOL: f64 = 1e-12;

/// `‖θ‖_T = min_k |θ − 2πk|`, in `[0, π]`.
pub fn torus_norm(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    r.min(2.0 * PI - r)
}

/// An angle on `R / 2πZ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusAngle(pub f64);

impl TorusAngle {
    pub fn of(z: Complex64) -> Self {
        TorusAngle(z.arg())
    }

    pub fn norm(self) -> f64 {
        torus_norm(self.0)
    }

    /// `‖self − other‖_T`.
    pub fn distance(self, other: TorusAngle) -> f64 {
        torus_norm(self.0 - other.0)
    }
}

/// `E(S, Sᶜ) / min(vol S, vol Sᶜ)`; infinite when either side has zero volume.
pub fn cheeger_ratio(g: &Graph, set: &[usize]) -> f64 {
    let mut in_set = vec![false; g.n_vertices()];
    set.iter().for_each(|&v| in_set[v] = true);
    let cut = g.cut_size(&in_set);
    let vol_s = g.volume(set.iter().copied());
    let den = vol_s.min(2 * g.n_edges() - vol_s);
    if den == 0 {
        f64::INFINITY
    } else {
        cut as f64 / den as f64
    }
}

/// Output of [`spectral_cluster`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterCut {
    /// The returned side, sorted; at most half the vertices.
    pub set: Vec<usize>,
    /// `h(set)`.
    pub ratio: f64,
    /// `λ2` of the normalized Laplacian the sweep came from.
    pub lambda2: f64,
}

/// Sweep-cut spectral clustering on a connected graph.
///
/// Orders vertices by `D^{-1/2}u` for the second Laplacian eigenvector `u`
/// (sign fixed so its largest-magnitude entry is positive, ties by vertex
/// index), scores each prefix `S_i`, `i = 1..n−1`, by its Cheeger ratio, and
/// returns the best prefix or its complement, whichever is smaller. Equal
/// ratios prefer the smaller returned set.
pub fn spectral_cluster(g: &Graph) -> Result<ClusterCut> {
    let n = g.n_vertices();
    if n < 2 {
        return Err(Error::degenerate("spectral clustering needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::degenerate("spectral clustering needs a connected graph"));
    }
    let (values, vectors) = sym_eigen_sorted(normalized_laplacian(g)?);
    let mut u: Vec<f64> = vectors.column(1).iter().copied().collect();
    fix_sign(&mut u);
    let score: Vec<f64> = (0..n).map(|v| u[v] / (g.degree(v) as f64).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| score[a].total_cmp(&score[b]).then(a.cmp(&b)));

    let total_vol = 2 * g.n_edges();
    let mut in_set = vec![false; n];
    let (mut cut, mut vol) = (0usize, 0usize);
    // best: (cut, denominator, returned size, prefix length)
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for (i, &v) in order.iter().enumerate().take(n - 1) {
        for &(w, _) in g.neighbors(v) {
            if in_set[w] {
                cut -= 1;
            } else {
                cut += 1;
            }
        }
        in_set[v] = true;
        vol += g.degree(v);
        let den = vol.min(total_vol - vol);
        let len = i + 1;
        let size = len.min(n - len);
        let better = match best {
            None => true,
            Some((bc, bd, bsize, _)) => {
                // exact rational comparison cut/den < bc/bd
                let lhs = cut as u128 * bd as u128;
                let rhs = bc as u128 * den as u128;
                lhs < rhs || (lhs == rhs && size < bsize)
            }
        };
        if better {
            best = Some((cut, den, size, len));
        }
    }
    let (bc, bd, _, len) = best.expect("n ≥ 2 gives at least one prefix");
    let mut set: Vec<usize> = if len <= n - len { order[..len].to_vec() } else { order[len..].to_vec() };
    set.sort_unstable();
    Ok(ClusterCut { set, ratio: bc as f64 / bd as f64, lambda2: values[1] })
}

/// `L1 = I − D^{-1/2} A1 D^{-1/2}` with `A1[tail, head] = ρ`, `A1[head, tail] = conj(ρ)`
/// for each edge's relative phase `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionLaplacian {
    pub matrix: CMatrix,
    pub degrees: Vec<usize>,
}

/// Builds the connection Laplacian of `g` from `estimates`, aligned with
/// `g.edges()`. An estimate given in the opposite orientation is conjugated.
pub fn connection_laplacian(g: &Graph, estimates: &[EdgeEstimate]) -> Result<ConnectionLaplacian> {
    if estimates.len() != g.n_edges() {
        return Err(Error::DimensionMismatch { expected: g.n_edges(), found: estimates.len() });
    }
    let n = g.n_vertices();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::degenerate(format!("vertex {v} is isolated")));
    }
    let degrees = g.degrees();
    let inv_sqrt: Vec<f64> = degrees.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut matrix = CMatrix::identity(n, n);
    for (edge, est) in g.edges().iter().zip(estimates) {
        let rho = if est.edge == *edge {
            relative_phase(est)?
        } else if est.edge.tail == edge.head && est.edge.head == edge.tail {
            relative_phase(est)?.conj()
        } else {
            return Err(Error::Index(format!(
                "estimate for ({}, {}) does not match edge ({}, {})",
                est.edge.tail, est.edge.head, edge.tail, edge.head
            )));
        };
        let w = inv_sqrt[edge.tail] * inv_sqrt[edge.head];
        matrix[(edge.tail, edge.head)] = -rho * w;
        matrix[(edge.head, edge.tail)] = -rho.conj() * w;
    }
    Ok(ConnectionLaplacian { matrix, degrees })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synchronization {
    /// Unit-modulus vertex phases `w` with `w_head ≈ ρ · w_tail` on every edge.
    pub phases: Vec<Complex64>,
    /// Vertices whose eigenvector coordinate vanished; their phase is 1.
    pub zero_coordinates: Vec<usize>,
    /// Smallest eigenvalue of `L1` (zero for consistent relative phases).
    pub lambda_min: f64,
}

/// Angular synchronization from the bottom eigenvector `u` of `L1`.
///
/// `u` is rotated so its largest-magnitude coordinate is positive real. With
/// `A1[i, j]` estimating `conj(ω_i) ω_j`, the bottom eigenvector is
/// proportional to `D^{1/2} conj(ω)`, so the vertex phases returned are
/// `conj(u_i) / |u_i|`.
pub fn angular_synchronization(cl: &ConnectionLaplacian) -> Synchronization {
    let (lambda_min, bottom) = psd_bottom_eigenpair(&cl.matrix);
    let mut u: Vec<Complex64> = bottom.iter().copied().collect();
    fix_phase(&mut u);
    let mut zero_coordinates = Vec::new();
    let phases = u
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let r = z.norm();
            if r <= ZERO_COORD_TOL {
                zero_coordinates.push(i);
                Complex64::new(1.0, 0.0)
            } else {
                z.conj() / r
            }
        })
        .collect();
    Synchronization { phases, zero_coordinates, lambda_min }
}

/// Constant-free synchronization error scale `‖ε‖² / (τ² P²)`.
pub fn sync_error_bound(min_edge_magnitude: f64, tau: f64, eps_norm: f64) -> Result<f64> {
    if !(min_edge_magnitude > 0.0) || !(tau > 0.0) {
        return Err(Error::param(format!(
            "need P > 0 and τ > 0 (got P = {min_edge_magnitude}, τ = {tau})"
        )));
    }
    Ok(eps_norm * eps_norm / (tau * tau * min_edge_magnitude * min_edge_magnitude))
}

/// Best global rotation `e^{iθ}` aligning `estimate` to `truth` in the
/// least-squares sense, and the maximum per-coordinate torus error after it.
pub fn max_aligned_phase_error(estimate: &[Complex64], truth: &[Complex64]) -> f64 {
    let s: Complex64 = estimate.iter().zip(truth).map(|(w, t)| t.conj() * w).sum();
    let rot = if s.norm() > 0.0 { s / s.norm() } else { Complex64::new(1.0, 0.0) };
    estimate
        .iter()
        .zip(truth)
        .map(|(w, t)| torus_norm(w.arg() - t.arg() - rot.arg()))
        .fold(0.0, f64::max)
}
