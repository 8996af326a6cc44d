//! Seeded simulation sweeps and the analysis helpers that locate the
//! noiseless phase transition.

mod analysis;
mod sweep;

pub use analysis::{
    giant_component_fraction, golden_section_min, minimize_redundancy, phase_transition_curve, redundancy,
};
pub use sweep::{run_noiseless_grid, run_noisy_compare, run_sweep};

use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::AltProjParams;
use crate::ensemble::NoiseModel;
use crate::recovery::PruneParams;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    NoiselessGrid,
    NoisyCompare,
}

impl std::str::FromStr for SweepMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noiseless-grid" => Ok(Self::NoiselessGrid),
            "noisy-compare" => Ok(Self::NoisyCompare),
            _ => Err(crate::Error::Parse(format!("unknown sweep mode `{s}`"))),
        }
    }
}

/// Sweep parameters. Missing JSON fields take the defaults of the mode, so a
/// config file only needs `mode` plus whatever it overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub dims: Vec<usize>,
    pub r_grid: Vec<f64>,
    pub c_grid: Vec<f64>,
    pub trials: usize,
    pub sigma: f64,
    /// Noise models run by `noisy-compare`; each gets its own rows.
    pub noise_models: Vec<NoiseModel>,
    pub prune: PruneParams,
    pub altproj: AltProjParams,
    pub seed: u64,
    /// Write wall-clock times to the CSV. Off by default, which keeps the
    /// output a pure function of the config.
    pub record_timings: bool,
}

fn grid(start: f64, step: f64, stop: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

impl SweepConfig {
    pub fn noiseless_grid() -> Self {
        Self {
            mode: SweepMode::NoiselessGrid,
            dims: vec![16, 32, 64],
            r_grid: grid(1.0, 0.25, 4.0),
            c_grid: grid(1.0, 0.5, 2.0),
            trials: 30,
            sigma: 0.0,
            noise_models: Vec::new(),
            prune: PruneParams::default(),
            altproj: AltProjParams::default(),
            seed: 0,
            record_timings: false,
        }
    }

    pub fn noisy_compare() -> Self {
        Self {
            mode: SweepMode::NoisyCompare,
            dims: (8..=128).step_by(4).collect(),
            r_grid: vec![3.0],
            c_grid: vec![8.0],
            trials: 20,
            sigma: 0.4,
            noise_models: vec![NoiseModel::PreModulus, NoiseModel::PostIntensity],
            prune: PruneParams::default(),
            altproj: AltProjParams::default(),
            seed: 0,
            record_timings: false,
        }
    }

    pub fn for_mode(mode: SweepMode) -> Self {
        match mode {
            SweepMode::NoiselessGrid => Self::noiseless_grid(),
            SweepMode::NoisyCompare => Self::noisy_compare(),
        }
    }

    /// Parses a config, filling unspecified fields from the defaults of its
    /// `mode` (or of `fallback` when `mode` is absent).
    pub fn from_json(text: &str, fallback: SweepMode) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let serde_json::Value::Object(overrides) = value else {
            return Err(crate::Error::Parse("sweep config must be a JSON object".into()));
        };
        let mode = match overrides.get("mode") {
            Some(m) => serde_json::from_value(m.clone())?,
            None => fallback,
        };
        let mut base = serde_json::to_value(Self::for_mode(mode))?;
        if let serde_json::Value::Object(map) = &mut base {
            map.extend(overrides);
        }
        let cfg: Self = serde_json::from_value(base)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(crate::Error::Parameter(msg));
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dims must be a nonempty list of positive dimensions".into());
        }
        if self.r_grid.is_empty() || self.r_grid.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
            return bad("r_grid must be a nonempty list of positive ratios".into());
        }
        if self.c_grid.is_empty() || self.c_grid.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
            return bad("c_grid must be a nonempty list of nonnegative mean degrees".into());
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return bad(format!("sigma = {} must be finite and ≥ 0", self.sigma));
        }
        if self.mode == SweepMode::NoisyCompare && self.noise_models.is_empty() {
            return bad("noisy-compare needs at least one noise model".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON encoding, as lowercase hex.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// One recovery attempt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "M")]
    pub dim: usize,
    pub r: f64,
    pub c: f64,
    pub trial: usize,
    pub seed: u64,
    pub method: String,
    /// Aligned relative error; empty when the method produced no estimate.
    pub error: Option<f64>,
    pub runtime_s: Option<f64>,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub mode: SweepMode,
    pub seed: u64,
    pub config_sha256: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    #[serde(rename = "M")]
    pub dim: usize,
    pub r: f64,
    pub c: f64,
    pub method: String,
    pub trials: usize,
    pub successes: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Success proportion per `(M, r, c, method)`, in first-appearance order.
    pub fn cells(&self) -> Vec<CellSummary> {
        let mut out: Vec<CellSummary> = Vec::new();
        for row in &self.rows {
            let found = out.iter_mut().find(|s| {
                s.dim == row.dim && s.r == row.r && s.c == row.c && s.method == row.method
            });
            let cell = match found {
                Some(cell) => cell,
                None => {
                    out.push(CellSummary {
                        dim: row.dim,
                        r: row.r,
                        c: row.c,
                        method: row.method.clone(),
                        trials: 0,
                        successes: 0,
                        proportion: 0.0,
                    });
                    out.last_mut().expect("just pushed")
                }
            };
            cell.trials += 1;
            cell.successes += usize::from(row.success);
            cell.proportion = cell.successes as f64 / cell.trials as f64;
        }
        out
    }

    /// Rows for one method and dimension.
    pub fn select<'a>(&'a self, method: &'a str, dim: usize) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |row| row.method == method && row.dim == dim)
    }

    /// Median error for `method` at `dim`, counting failed trials as `+∞`.
    pub fn median_error(&self, method: &str, dim: usize) -> Option<f64> {
        median(self.select(method, dim).map(|row| row.error.unwrap_or(f64::INFINITY)).collect())
    }

    pub fn median_runtime(&self, method: &str, dim: usize) -> Option<f64> {
        median(self.select(method, dim).filter_map(|row| row.runtime_s).collect())
    }

    /// Flat CSV with header `M,r,c,trial,seed,method,error,runtime_s,success`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["M", "r", "c", "trial", "seed", "method", "error", "runtime_s", "success"])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Median of finite-or-infinite values; `None` when empty.
pub fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { 0.5 * (values[n / 2 - 1] + values[n / 2]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids() {
        let cfg = SweepConfig::noiseless_grid();
        assert_eq!(cfg.r_grid.len(), 13);
        assert_eq!(cfg.r_grid[12], 4.0);
        assert_eq!(cfg.c_grid, vec![1.0, 1.5, 2.0]);
        let cfg = SweepConfig::noisy_compare();
        assert_eq!(cfg.dims.first(), Some(&8));
        assert_eq!(cfg.dims.last(), Some(&128));
        assert_eq!(cfg.dims.len(), 31);
    }

    #[test]
    fn partial_json_uses_mode_defaults() {
        let cfg = SweepConfig::from_json(r#"{"mode":"noisy-compare","trials":3,"dims":[16]}"#, SweepMode::NoiselessGrid)
            .unwrap();
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.sigma, 0.4);
        assert_eq!(cfg.dims, vec![16]);
        let cfg = SweepConfig::from_json(r#"{"seed":9}"#, SweepMode::NoiselessGrid).unwrap();
        assert_eq!(cfg.mode, SweepMode::NoiselessGrid);
        assert_eq!(cfg.seed, 9);
        assert!(SweepConfig::from_json(r#"{"trials":0}"#, SweepMode::NoiselessGrid).is_err());
        assert!(SweepConfig::from_json("[1]", SweepMode::NoiselessGrid).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = SweepConfig::noiseless_grid();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.seed = 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn medians() {
        assert_eq!(median(vec![]), None);
        assert_eq!(median(vec![3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(vec![1.0, f64::INFINITY, f64::INFINITY]), Some(f64::INFINITY));
    }
}
