//! Measurement ensembles: a vertex frame `Φ_V` on the vertices of a graph plus
//! the polarization vectors `φ_i + ζ^k φ_j` on each oriented edge, and the
//! simulation of intensity measurements under both noise models.
//!
//! Measurement ordering, used wherever a flat vector of all `N = |V| + 3|E|`
//! measurements appears: vertices `0..|V|` first, then for each edge in
//! stored order its three vectors `k = 0, 1, 2`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::graph::{gen_erdos_renyi, gen_random_regular, spectral_summary, Edge, Graph};
use crate::linalg::{analysis, CMatrix, CVector};
use crate::rng::{derive_seed, rng_from_seed};
use crate::{Complex64, Error, Result};

const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;

/// `ζ = e^{2πi/3}`, from its exact coordinates `(−1/2, √3/2)`.
pub const ZETA: Complex64 = Complex64::new(-0.5, HALF_SQRT_3);

/// `ζ^k` for `k ∈ {0, 1, 2}`, reduced mod 3 otherwise.
pub fn zeta_pow(k: usize) -> Complex64 {
    match k % 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => ZETA,
        _ => ZETA.conj(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    Gaussian,
    Dft,
    Custom,
}

/// Columns with i.i.d. `CN(0, 1/M)` entries, drawn column by column, real
/// part before imaginary part.
pub fn gaussian_frame(dim: usize, n: usize, seed: u64) -> Result<CMatrix> {
    if dim == 0 || n == 0 {
        return Err(Error::param("Gaussian frame needs M ≥ 1 and n ≥ 1"));
    }
    let scale = (0.5 / dim as f64).sqrt();
    let mut rng = rng_from_seed(seed);
    let mut data = Vec::with_capacity(dim * n);
    for _ in 0..dim * n {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        data.push(Complex64::new(re * scale, im * scale));
    }
    Ok(CMatrix::from_vec(dim, n, data))
}

/// First `M` rows of the `n × n` DFT matrix, scaled to unit-norm columns:
/// entry `(m, j)` is `e^{−2πi m j / n} / √M`. Full spark by Vandermonde.
pub fn dft_full_spark_frame(dim: usize, n: usize) -> Result<CMatrix> {
    if dim == 0 || n < dim {
        return Err(Error::param(format!("DFT frame needs 1 ≤ M ≤ n (got M = {dim}, n = {n})")));
    }
    let scale = 1.0 / (dim as f64).sqrt();
    Ok(CMatrix::from_fn(dim, n, |m, j| {
        // reduce m·j mod n before the angle to keep the argument small
        let t = ((m * j) % n) as f64 / n as f64;
        Complex64::from_polar(scale, -2.0 * std::f64::consts::PI * t)
    }))
}

/// Signal with i.i.d. `CN(0, 1/M)` entries.
pub fn gaussian_signal(dim: usize, seed: u64) -> Result<CVector> {
    Ok(CVector::from_column_slice(gaussian_frame(dim, 1, seed)?.as_slice()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementEnsemble {
    graph: Graph,
    phi_v: CMatrix,
    frame_kind: FrameKind,
    seed: Option<u64>,
}

impl MeasurementEnsemble {
    pub fn new(graph: Graph, phi_v: CMatrix, frame_kind: FrameKind, seed: Option<u64>) -> Result<Self> {
        if phi_v.ncols() != graph.n_vertices() {
            return Err(Error::DimensionMismatch { expected: graph.n_vertices(), found: phi_v.ncols() });
        }
        if phi_v.nrows() == 0 {
            return Err(Error::param("frame dimension must be at least 1"));
        }
        if phi_v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::param("frame has non-finite entries"));
        }
        Ok(Self { graph, phi_v, frame_kind, seed })
    }

    /// Gaussian vertex frame on `graph`.
    pub fn gaussian(graph: Graph, dim: usize, seed: u64) -> Result<Self> {
        let phi = gaussian_frame(dim, graph.n_vertices(), seed)?;
        Self::new(graph, phi, FrameKind::Gaussian, Some(seed))
    }

    /// DFT vertex frame on `graph`.
    pub fn dft(graph: Graph, dim: usize) -> Result<Self> {
        let phi = dft_full_spark_frame(dim, graph.n_vertices())?;
        Self::new(graph, phi, FrameKind::Dft, None)
    }

    pub fn dim(&self) -> usize {
        self.phi_v.nrows()
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }

    /// `N = |V| + 3|E|`.
    pub fn n_measurements(&self) -> usize {
        self.graph.n_vertices() + 3 * self.graph.n_edges()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn phi_v(&self) -> &CMatrix {
        &self.phi_v
    }

    pub fn frame_kind(&self) -> FrameKind {
        self.frame_kind
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `φ_tail + ζ^k φ_head` for the stored orientation of edge `{a, b}`.
    pub fn edge_vector(&self, a: usize, b: usize, k: usize) -> Result<CVector> {
        if k > 2 {
            return Err(Error::Index(format!("polarization index k = {k} (expected 0, 1 or 2)")));
        }
        let idx = self
            .graph
            .find_edge(a, b)
            .ok_or_else(|| Error::Index(format!("no edge between {a} and {b}")))?;
        Ok(self.edge_vector_by_index(idx, k))
    }

    pub fn edge_vector_by_index(&self, idx: usize, k: usize) -> CVector {
        let e = self.graph.edge(idx);
        self.phi_v.column(e.tail) + self.phi_v.column(e.head) * zeta_pow(k)
    }

    /// The full `M × N` measurement matrix in measurement order.
    pub fn full_frame(&self) -> CMatrix {
        let m = self.dim();
        let mut out = CMatrix::zeros(m, self.n_measurements());
        out.columns_mut(0, self.n_vertices()).copy_from(&self.phi_v);
        for idx in 0..self.graph.n_edges() {
            for k in 0..3 {
                out.set_column(self.n_vertices() + 3 * idx + k, &self.edge_vector_by_index(idx, k));
            }
        }
        out
    }

    /// Linear measurements `Φ* x` in measurement order, computed from the
    /// vertex coefficients: `⟨x, φ_i + ζ^k φ_j⟩ = ⟨x,φ_i⟩ + conj(ζ^k)⟨x,φ_j⟩`.
    pub fn linear_measurements(&self, x: &CVector) -> Result<CVector> {
        let a = self.vertex_coefficients(x)?;
        let mut out = Vec::with_capacity(self.n_measurements());
        out.extend(a.iter().copied());
        for e in self.graph.edges() {
            for k in 0..3 {
                out.push(a[e.tail] + zeta_pow(k).conj() * a[e.head]);
            }
        }
        Ok(CVector::from_vec(out))
    }

    /// `⟨x, φ_i⟩` for every vertex.
    pub fn vertex_coefficients(&self, x: &CVector) -> Result<CVector> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(analysis(&self.phi_v, x))
    }
}

/// Where the noise enters an intensity measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseModel {
    /// `z = |⟨x,φ⟩|² + ν`, `ν ~ N(0, σ²/M)` real.
    PostIntensity,
    /// `z = |⟨x,φ⟩ + ν|²`, `ν ~ CN(0, σ²/M)`.
    PreModulus,
}

impl NoiseModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoiseModel::PostIntensity => "post-intensity",
            NoiseModel::PreModulus => "pre-modulus",
        }
    }
}

impl std::str::FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "post-intensity" => Ok(NoiseModel::PostIntensity),
            "pre-modulus" => Ok(NoiseModel::PreModulus),
            other => Err(Error::Parse(format!("unknown noise model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub model: NoiseModel,
    pub sigma: f64,
}

impl NoiseSpec {
    pub fn noiseless() -> Self {
        Self { model: NoiseModel::PostIntensity, sigma: 0.0 }
    }

    pub fn new(model: NoiseModel, sigma: f64) -> Self {
        Self { model, sigma }
    }
}

/// One draw of measurement noise, in measurement order. Post-intensity noise
/// is stored with zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseRealization {
    pub model: NoiseModel,
    pub sigma: f64,
    pub values: Vec<Complex64>,
}

impl NoiseRealization {
    pub fn zero(model: NoiseModel, n_measurements: usize) -> Self {
        Self { model, sigma: 0.0, values: vec![Complex64::new(0.0, 0.0); n_measurements] }
    }

    pub fn sample(ens: &MeasurementEnsemble, spec: NoiseSpec, seed: u64) -> Result<Self> {
        if !(spec.sigma >= 0.0) || !spec.sigma.is_finite() {
            return Err(Error::param(format!("noise level σ = {} must be finite and ≥ 0", spec.sigma)));
        }
        let n = ens.n_measurements();
        if spec.sigma == 0.0 {
            return Ok(Self::zero(spec.model, n));
        }
        let var = spec.sigma * spec.sigma / ens.dim() as f64;
        let mut rng = rng_from_seed(seed);
        let values = match spec.model {
            NoiseModel::PostIntensity => {
                let sd = var.sqrt();
                (0..n)
                    .map(|_| Complex64::new(sd * rng.sample::<f64, _>(StandardNormal), 0.0))
                    .collect()
            }
            NoiseModel::PreModulus => {
                let sd = (0.5 * var).sqrt();
                (0..n)
                    .map(|_| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        Complex64::new(sd * re, sd * im)
                    })
                    .collect()
            }
        };
        Ok(Self { model: spec.model, sigma: spec.sigma, values })
    }

    pub fn vertex(&self, n_vertices: usize) -> &[Complex64] {
        &self.values[..n_vertices]
    }
}

/// Intensities indexed by vertex and by `(edge, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityData {
    pub vertex_z: Vec<f64>,
    pub edge_z: Vec<[f64; 3]>,
    pub noise: NoiseSpec,
}

impl IntensityData {
    pub fn n_measurements(&self) -> usize {
        self.vertex_z.len() + 3 * self.edge_z.len()
    }

    /// All intensities in measurement order.
    pub fn flattened(&self) -> Vec<f64> {
        let mut out = self.vertex_z.clone();
        out.extend(self.edge_z.iter().flatten());
        out
    }

    pub fn check_aligned(&self, ens: &MeasurementEnsemble) -> Result<()> {
        if self.vertex_z.len() != ens.n_vertices() {
            return Err(Error::Index(format!(
                "{} vertex intensities for {} vertices",
                self.vertex_z.len(),
                ens.n_vertices()
            )));
        }
        if self.edge_z.len() != ens.graph().n_edges() {
            return Err(Error::Index(format!(
                "{} edge intensity triples for {} edges",
                self.edge_z.len(),
                ens.graph().n_edges()
            )));
        }
        Ok(())
    }
}

/// Applies a given noise draw to the measurements of `x`.
pub fn measure_with(ens: &MeasurementEnsemble, x: &CVector, noise: &NoiseRealization) -> Result<IntensityData> {
    if noise.values.len() != ens.n_measurements() {
        return Err(Error::DimensionMismatch { expected: ens.n_measurements(), found: noise.values.len() });
    }
    let lin = ens.linear_measurements(x)?;
    let z: Vec<f64> = lin
        .iter()
        .zip(&noise.values)
        .map(|(c, nu)| match noise.model {
            NoiseModel::PostIntensity => c.norm_sqr() + nu.re,
            NoiseModel::PreModulus => (c + nu).norm_sqr(),
        })
        .collect();
    let nv = ens.n_vertices();
    let edge_z = z[nv..].chunks_exact(3).map(|t| [t[0], t[1], t[2]]).collect();
    Ok(IntensityData {
        vertex_z: z[..nv].to_vec(),
        edge_z,
        noise: NoiseSpec { model: noise.model, sigma: noise.sigma },
    })
}

/// Simulated intensities of `x`. With `σ = 0` the result is exact and does
/// not depend on `seed`.
pub fn measure(ens: &MeasurementEnsemble, x: &CVector, spec: NoiseSpec, seed: u64) -> Result<IntensityData> {
    measure_with(ens, x, &NoiseRealization::sample(ens, spec, seed)?)
}

/// Design parameter `λ' = 1 − (2√(d−1) + ε)/d`.
pub fn design_gap_target(d: usize, eps: f64) -> f64 {
    1.0 - (2.0 * ((d - 1) as f64).sqrt() + eps) / d as f64
}

/// Smallest `n` with `M ≤ (λ'/6) n + 1`, i.e. `⌈6(M − 1)/λ'⌉`: removing any
/// `M − 1` vertices of a `d`-regular graph with gap `λ'` leaves a component of
/// at least `M` vertices.
pub fn design_a_vertex_count(dim: usize, d: usize, eps: f64) -> Result<usize> {
    let target = design_gap_target(d, eps);
    if !(target > 0.0) || eps <= 0.0 {
        return Err(Error::param(format!("need d > 2 even and 0 < ε < d − 2√(d−1) (got d = {d}, ε = {eps})")));
    }
    Ok((6.0 * (dim.saturating_sub(1)) as f64 / target).ceil() as usize)
}

/// Whether a graph with gap `lambda2` on `n` vertices meets `M ≤ (λ2/6) n + 1`.
pub fn design_a_admissible(dim: usize, n: usize, lambda2: f64) -> bool {
    dim as f64 <= lambda2 / 6.0 * n as f64 + 1.0
}

/// Redundancy bound `N/M ≤ (3d/2 + 1)·6 / λ'` for Design A with
/// `λ' = 1 − (2√(d−1) + ε)/d`; `ε = 0` gives the Ramanujan value.
pub fn expander_redundancy_bound(d: usize, eps: f64) -> f64 {
    (1.5 * d as f64 + 1.0) * 6.0 / design_gap_target(d, eps)
}

/// Draws random `d`-regular graphs until one has gap `≥ λ'`.
fn certified_regular_graph(n: usize, d: usize, eps: f64, seed: u64, max_draws: usize) -> Result<Graph> {
    let target = design_gap_target(d, eps);
    for draw in 0..max_draws {
        let g = gen_random_regular(n, d, derive_seed(seed, &[draw as u64]))?;
        if spectral_summary(&g)?.spectral_gap >= target {
            return Ok(g);
        }
    }
    Err(Error::RetryExhausted { attempts: max_draws })
}

/// Noiseless design on a certified random `d`-regular graph with
/// `⌈6(M−1)/λ'⌉` vertices and a full-spark vertex frame (`Dft` or `Gaussian`).
pub fn design_a(dim: usize, d: usize, eps: f64, frame: FrameKind, seed: u64) -> Result<MeasurementEnsemble> {
    if !d.is_multiple_of(2) || d <= 2 {
        return Err(Error::param(format!("design needs an even degree d > 2 (got {d})")));
    }
    let n = design_a_vertex_count(dim, d, eps)?.max(d + 1).max(dim);
    let g = certified_regular_graph(n, d, eps, derive_seed(seed, &[0]), 100)?;
    match frame {
        FrameKind::Dft => MeasurementEnsemble::dft(g, dim),
        FrameKind::Gaussian => MeasurementEnsemble::gaussian(g, dim, derive_seed(seed, &[1])),
        FrameKind::Custom => Err(Error::param("design A builds DFT or Gaussian frames only")),
    }
}

/// Vertex count `⌈c M log M⌉` for the noisy design.
pub fn design_b_vertex_count(dim: usize, c: f64) -> usize {
    (c * dim as f64 * (dim as f64).ln()).ceil() as usize
}

/// Noisy design: certified random `d`-regular graph on `⌈c M log M⌉` vertices
/// with a Gaussian vertex frame.
pub fn design_b(dim: usize, d: usize, eps: f64, c: f64, seed: u64) -> Result<MeasurementEnsemble> {
    if !d.is_multiple_of(2) || d <= 2 {
        return Err(Error::param(format!("design needs an even degree d > 2 (got {d})")));
    }
    if !(c > 0.0) {
        return Err(Error::param(format!("vertex-count constant c = {c} must be positive")));
    }
    if !(design_gap_target(d, eps) > 0.0) || eps <= 0.0 {
        return Err(Error::param(format!("need 0 < ε < d − 2√(d−1) (got d = {d}, ε = {eps})")));
    }
    let n = design_b_vertex_count(dim, c).max(d + 1).max(dim);
    let g = certified_regular_graph(n, d, eps, derive_seed(seed, &[0]), 100)?;
    MeasurementEnsemble::gaussian(g, dim, derive_seed(seed, &[1]))
}

/// Erdős–Rényi design used by the simulations: `n = round(rM)` vertices, edge
/// probability `c/n`, Gaussian vertex frame.
pub fn erdos_renyi_design(dim: usize, r: f64, c: f64, seed: u64) -> Result<MeasurementEnsemble> {
    if !(r > 0.0) || !(c >= 0.0) {
        return Err(Error::param(format!("need r > 0 and c ≥ 0 (got r = {r}, c = {c})")));
    }
    let n = ((r * dim as f64).round() as usize).max(1);
    let p = (c / n as f64).min(1.0);
    let g = gen_erdos_renyi(n, p, derive_seed(seed, &[0]))?;
    MeasurementEnsemble::gaussian(g, dim, derive_seed(seed, &[1]))
}

/// Oriented edge list, for serialization.
pub fn edge_pairs(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e: &Edge| (e.tail, e.head)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_a_cube_root_of_unity() {
        let z3 = ZETA * ZETA * ZETA;
        assert!((z3 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let angle = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((ZETA - angle).norm() < 1e-15);
        assert_eq!(zeta_pow(2), ZETA.conj());
    }

    #[test]
    fn gaussian_frame_is_reproducible() {
        let a = gaussian_frame(1, 1, 42).unwrap();
        let b = gaussian_frame(1, 1, 42).unwrap();
        assert_eq!(a[(0, 0)].re.to_bits(), b[(0, 0)].re.to_bits());
        assert_eq!(a[(0, 0)].im.to_bits(), b[(0, 0)].im.to_bits());
        assert!(gaussian_frame(0, 3, 1).is_err());
    }

    #[test]
    fn dft_columns_have_unit_norm() {
        let phi = dft_full_spark_frame(7, 19).unwrap();
        for j in 0..19 {
            assert!((phi.column(j).norm() - 1.0).abs() < 1e-12);
        }
        assert!(dft_full_spark_frame(5, 4).is_err());
    }

    #[test]
    fn dft_pairs_are_independent() {
        let phi = dft_full_spark_frame(2, 3).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let det = phi[(0, a)] * phi[(1, b)] - phi[(0, b)] * phi[(1, a)];
            assert!(det.norm() > 0.1, "columns {a},{b}: |det| = {}", det.norm());
        }
    }

    #[test]
    fn square_dft_is_unitary() {
        let phi = dft_full_spark_frame(6, 6).unwrap();
        let gram = phi.adjoint() * &phi;
        let eye = CMatrix::identity(6, 6);
        assert!((gram - eye).norm() < 1e-12);
    }

    #[test]
    fn edge_vectors_follow_orientation() {
        let g = Graph::from_edges(3, [Edge::new(2, 0), Edge::new(0, 1)]).unwrap();
        let ens = MeasurementEnsemble::gaussian(g, 4, 5).unwrap();
        let phi = ens.phi_v();
        let v = ens.edge_vector(0, 2, 1).unwrap();
        let expect = phi.column(2) + phi.column(0) * ZETA;
        assert!((v - expect).norm() < 1e-15);
        let v0 = ens.edge_vector(0, 1, 0).unwrap();
        assert!((v0 - (phi.column(0) + phi.column(1))).norm() < 1e-15);
        assert!(matches!(ens.edge_vector(1, 2, 0), Err(Error::Index(_))));
        assert!(matches!(ens.edge_vector(0, 1, 3), Err(Error::Index(_))));
    }

    #[test]
    fn zero_head_column_gives_tail_vector() {
        let g = Graph::from_pairs(2, &[(0, 1)]).unwrap();
        let mut phi = gaussian_frame(3, 2, 1).unwrap();
        phi.column_mut(1).fill(Complex64::new(0.0, 0.0));
        let ens = MeasurementEnsemble::new(g, phi.clone(), FrameKind::Custom, None).unwrap();
        for k in 0..3 {
            assert_eq!(ens.edge_vector(0, 1, k).unwrap(), phi.column(0).into_owned());
        }
    }

    #[test]
    fn edge_vector_norm_expansion() {
        let g = Graph::from_pairs(2, &[(0, 1)]).unwrap();
        let ens = MeasurementEnsemble::gaussian(g, 5, 8).unwrap();
        let (pi, pj) = (ens.phi_v().column(0), ens.phi_v().column(1));
        for k in 0..3 {
            let direct = ens.edge_vector(0, 1, k).unwrap().norm_squared();
            // ⟨φ_i, ζ^k φ_j⟩ cross term
            let cross = (zeta_pow(k) * pi.dotc(&pj)).re;
            let expanded = pi.norm_squared() + 2.0 * cross + pj.norm_squared();
            assert!((direct - expanded).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_count_and_full_frame() {
        let g = crate::graph::gen_erdos_renyi(12, 0.3, 2).unwrap();
        let ens = MeasurementEnsemble::gaussian(g.clone(), 4, 3).unwrap();
        assert_eq!(ens.n_measurements(), 12 + 3 * g.n_edges());
        let full = ens.full_frame();
        assert_eq!(full.ncols(), ens.n_measurements());
        let x = gaussian_signal(4, 9).unwrap();
        let lin = ens.linear_measurements(&x).unwrap();
        assert!((full.ad_mul(&x) - lin).norm() < 1e-12);
    }

    #[test]
    fn zero_signal_noiseless_is_zero() {
        let g = crate::graph::gen_erdos_renyi(10, 0.4, 1).unwrap();
        let ens = MeasurementEnsemble::gaussian(g, 3, 1).unwrap();
        let data = measure(&ens, &CVector::zeros(3), NoiseSpec::noiseless(), 5).unwrap();
        assert!(data.flattened().iter().all(|&z| z == 0.0));
    }

    #[test]
    fn noiseless_vertex_intensities_match_inner_products() {
        let g = crate::graph::gen_erdos_renyi(10, 0.4, 1).unwrap();
        let ens = MeasurementEnsemble::gaussian(g, 3, 1).unwrap();
        let x = gaussian_signal(3, 2).unwrap();
        let data = measure(&ens, &x, NoiseSpec::noiseless(), 0).unwrap();
        for i in 0..10 {
            let direct = ens.phi_v().column(i).dotc(&x).norm_sqr();
            assert!((data.vertex_z[i] - direct).abs() < 1e-12);
        }
        assert_eq!(data, measure(&ens, &x, NoiseSpec::noiseless(), 999).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = Graph::complete(3);
        let ens = MeasurementEnsemble::gaussian(g, 3, 1).unwrap();
        let x = CVector::zeros(2);
        assert!(matches!(
            measure(&ens, &x, NoiseSpec::noiseless(), 0),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn design_helpers() {
        assert!((expander_redundancy_bound(6, 0.0) - 45.0 * (3.0 + 5f64.sqrt())).abs() < 1e-9);
        let n = design_a_vertex_count(10, 8, 0.1).unwrap();
        let target = design_gap_target(8, 0.1);
        assert!(design_a_admissible(10, n, target));
        assert!(!design_a_admissible(10, n - 1, target));
        assert!(design_a_vertex_count(10, 4, 1.0).is_err());
    }

    #[test]
    fn design_a_graph_is_certified() {
        let ens = design_a(6, 8, 0.1, FrameKind::Dft, 3).unwrap();
        let g = ens.graph();
        assert!(g.degrees().iter().all(|&d| d == 8));
        let gap = spectral_summary(g).unwrap().spectral_gap;
        assert!(gap >= design_gap_target(8, 0.1));
        assert!(design_a_admissible(6, g.n_vertices(), gap));
    }
}
