//! File formats: ensembles and signals as JSON, intensities as CSV.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::ensemble::{FrameKind, IntensityData, MeasurementEnsemble, NoiseModel, NoiseSpec};
use crate::graph::{Edge, Graph};
use crate::linalg::{CMatrix, CVector};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub dim: usize,
    pub n_vertices: usize,
    pub frame_kind: FrameKind,
    pub seed: Option<u64>,
    /// `[tail, head]` in stored order.
    pub edges: Vec<[usize; 2]>,
    /// Vertex vectors, one `dim`-long list of `[re, im]` per vertex.
    pub phi_v: Vec<Vec<Complex64>>,
}

impl From<&MeasurementEnsemble> for EnsembleFile {
    fn from(ens: &MeasurementEnsemble) -> Self {
        let phi = ens.phi_v();
        Self {
            dim: ens.dim(),
            n_vertices: ens.n_vertices(),
            frame_kind: ens.frame_kind(),
            seed: ens.seed(),
            edges: ens.graph().edges().iter().map(|e| [e.tail, e.head]).collect(),
            phi_v: (0..phi.ncols()).map(|j| phi.column(j).iter().copied().collect()).collect(),
        }
    }
}

impl EnsembleFile {
    pub fn into_ensemble(self) -> Result<MeasurementEnsemble> {
        if self.phi_v.len() != self.n_vertices {
            return Err(Error::DimensionMismatch { expected: self.n_vertices, found: self.phi_v.len() });
        }
        if let Some(col) = self.phi_v.iter().find(|c| c.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: col.len() });
        }
        let graph = Graph::from_edges(self.n_vertices, self.edges.iter().map(|&[t, h]| Edge::new(t, h)))?;
        let phi = CMatrix::from_fn(self.dim, self.n_vertices, |r, c| self.phi_v[c][r]);
        MeasurementEnsemble::new(graph, phi, self.frame_kind, self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalFile {
    pub dim: usize,
    pub values: Vec<Complex64>,
}

impl SignalFile {
    pub fn new(x: &CVector) -> Self {
        Self { dim: x.len(), values: x.iter().copied().collect() }
    }

    pub fn into_vector(self) -> Result<CVector> {
        if self.values.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: self.values.len() });
        }
        Ok(CVector::from_vec(self.values))
    }
}

fn open(path: &Path) -> Result<fs::File> {
    fs::File::open(path).map_err(|source| Error::File { path: path.to_path_buf(), source })
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|source| Error::File { path: path.to_path_buf(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text).map_err(|source| Error::File { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    Ok(())
}

pub fn load_ensemble(path: &Path) -> Result<MeasurementEnsemble> {
    read_json::<EnsembleFile>(path)?.into_ensemble()
}

pub fn save_ensemble(path: &Path, ens: &MeasurementEnsemble) -> Result<()> {
    write_json(path, &EnsembleFile::from(ens))
}

pub fn load_signal(path: &Path) -> Result<CVector> {
    read_json::<SignalFile>(path)?.into_vector()
}

pub fn save_signal(path: &Path, x: &CVector) -> Result<()> {
    write_json(path, &SignalFile::new(x))
}

#[derive(Debug, Serialize, Deserialize)]
struct IntensityRow {
    kind: String,
    index: usize,
    k: Option<usize>,
    z: f64,
}

const NOISE_PREFIX: &str = "# noise ";

/// Intensities as CSV: a `# noise <model> <sigma>` comment line, then
/// `kind,index,k,z` rows (vertices first, then edges with `k = 0, 1, 2`).
pub fn write_intensities<W: Write>(mut out: W, data: &IntensityData) -> Result<()> {
    writeln!(out, "{NOISE_PREFIX}{} {}", data.noise.model.as_str(), data.noise.sigma)?;
    let mut w = csv::Writer::from_writer(out);
    for (i, &z) in data.vertex_z.iter().enumerate() {
        w.serialize(IntensityRow { kind: "vertex".into(), index: i, k: None, z })?;
    }
    for (e, triple) in data.edge_z.iter().enumerate() {
        for (k, &z) in triple.iter().enumerate() {
            w.serialize(IntensityRow { kind: "edge".into(), index: e, k: Some(k), z })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_intensities<R: Read>(input: R) -> Result<IntensityData> {
    let mut input = BufReader::new(input);
    let mut first = String::new();
    input.read_line(&mut first)?;
    let noise = parse_noise_line(first.trim_end())?;
    let mut vertex_z = Vec::new();
    let mut edge_z: Vec<[f64; 3]> = Vec::new();
    let mut reader = csv::Reader::from_reader(input);
    for row in reader.deserialize::<IntensityRow>() {
        let row = row?;
        match (row.kind.as_str(), row.k) {
            ("vertex", None) if row.index == vertex_z.len() && edge_z.is_empty() => vertex_z.push(row.z),
            ("edge", Some(k)) if k < 3 => {
                if k == 0 && row.index == edge_z.len() {
                    edge_z.push([f64::NAN; 3]);
                } else if row.index + 1 != edge_z.len() || !edge_z[row.index][k - 1].is_finite() || k == 0 {
                    return Err(Error::Parse(format!("edge row ({}, {k}) out of order", row.index)));
                }
                edge_z[row.index][k] = row.z;
            }
            _ => return Err(Error::Parse(format!("unexpected intensity row `{},{},{:?}`", row.kind, row.index, row.k))),
        }
    }
    if edge_z.last().is_some_and(|t| t[2].is_nan()) {
        return Err(Error::Parse("last edge is missing intensities".into()));
    }
    Ok(IntensityData { vertex_z, edge_z, noise })
}

fn parse_noise_line(line: &str) -> Result<NoiseSpec> {
    let bad = || Error::Parse(format!("expected `{NOISE_PREFIX}<model> <sigma>` header, found `{line}`"));
    let rest = line.strip_prefix(NOISE_PREFIX).ok_or_else(bad)?;
    let mut parts = rest.split_whitespace();
    let model: NoiseModel = parts.next().ok_or_else(bad)?.parse()?;
    let sigma: f64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    Ok(NoiseSpec::new(model, sigma))
}

pub fn load_intensities(path: &Path) -> Result<IntensityData> {
    read_intensities(open(path)?)
}

pub fn save_intensities(path: &Path, data: &IntensityData) -> Result<()> {
    write_intensities(create(path)?, data)
}
