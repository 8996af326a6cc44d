use std::time::Instant;

use rayon::prelude::*;

use super::{SweepConfig, SweepMetadata, SweepMode, SweepResult, SweepRow};
use crate::baselines::{alternating_projections, oracle_full_lsq, oracle_vertex_lsq};
use crate::ensemble::{
    erdos_renyi_design, gaussian_signal, measure, measure_with, MeasurementEnsemble, NoiseRealization, NoiseSpec,
};
use crate::linalg::CVector;
use crate::recovery::{align_and_error, procedure_a, procedure_b, SUCCESS_TOL};
use crate::rng::derive_seed;
use crate::Result;

struct Job {
    cell: usize,
    dim: usize,
    r: f64,
    c: f64,
    trial: usize,
}

fn jobs(cfg: &SweepConfig) -> Vec<Job> {
    let mut out = Vec::new();
    let mut cell = 0;
    for &dim in &cfg.dims {
        for &r in &cfg.r_grid {
            for &c in &cfg.c_grid {
                out.extend((0..cfg.trials).map(|trial| Job { cell, dim, r, c, trial }));
                cell += 1;
            }
        }
    }
    out
}

fn metadata(cfg: &SweepConfig) -> SweepMetadata {
    SweepMetadata {
        mode: cfg.mode,
        seed: cfg.seed,
        config_sha256: cfg.hash(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Runs every `(cell, trial)` in parallel. Each trial seeds itself from
/// `(master seed, cell, trial)`, and rows come back in job order, so the
/// result does not depend on scheduling.
fn run_jobs(cfg: &SweepConfig, trial: impl Fn(&Job, u64) -> Vec<SweepRow> + Sync) -> Result<SweepResult> {
    cfg.validate()?;
    let rows: Vec<Vec<SweepRow>> = jobs(cfg)
        .par_iter()
        .map(|job| trial(job, derive_seed(cfg.seed, &[job.cell as u64, job.trial as u64])))
        .collect();
    Ok(SweepResult { metadata: metadata(cfg), rows: rows.into_iter().flatten().collect() })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    match cfg.mode {
        SweepMode::NoiselessGrid => run_noiseless_grid(cfg),
        SweepMode::NoisyCompare => run_noisy_compare(cfg),
    }
}

struct Timed<T> {
    value: T,
    seconds: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> Timed<T> {
    let start = Instant::now();
    let value = f();
    Timed { value, seconds: start.elapsed().as_secs_f64() }
}

fn row(cfg: &SweepConfig, job: &Job, seed: u64, method: String, error: Option<f64>, seconds: f64) -> SweepRow {
    let success = match cfg.mode {
        SweepMode::NoiselessGrid => error.is_some_and(|e| e < SUCCESS_TOL),
        SweepMode::NoisyCompare => error.is_some_and(f64::is_finite),
    };
    SweepRow {
        dim: job.dim,
        r: job.r,
        c: job.c,
        trial: job.trial,
        seed,
        method,
        error,
        runtime_s: cfg.record_timings.then_some(seconds),
        success,
    }
}

fn score(estimate: Result<CVector>, truth: &CVector) -> Option<f64> {
    estimate.ok().and_then(|x| align_and_error(&x, truth).ok()).map(|(_, e)| e)
}

/// Noiseless Erdős–Rényi grid: Procedure A per trial, success iff the
/// aligned error is below `1e-5`.
pub fn run_noiseless_grid(cfg: &SweepConfig) -> Result<SweepResult> {
    run_jobs(cfg, |job, seed| {
        let attempt = || -> Result<(Option<f64>, f64)> {
            let ens = erdos_renyi_design(job.dim, job.r, job.c, derive_seed(seed, &[0]))?;
            let x = gaussian_signal(job.dim, derive_seed(seed, &[1]))?;
            let data = measure(&ens, &x, NoiseSpec::noiseless(), 0)?;
            let t = timed(|| procedure_a(&ens, &data, &cfg.prune));
            Ok((score(t.value.map(|r| r.estimate_vector()), &x), t.seconds))
        };
        let (error, seconds) = attempt().unwrap_or((None, 0.0));
        vec![row(cfg, job, seed, "procedure_a".into(), error, seconds)]
    })
}

/// Noisy comparison per trial and noise model: Procedure B and alternating
/// projections on the full and vertex-only frames, plus (pre-modulus only)
/// least-squares oracles fed the same noise draw.
pub fn run_noisy_compare(cfg: &SweepConfig) -> Result<SweepResult> {
    run_jobs(cfg, |job, seed| {
        let setup = || -> Result<(MeasurementEnsemble, CVector)> {
            let ens = erdos_renyi_design(job.dim, job.r, job.c, derive_seed(seed, &[0]))?;
            let x = gaussian_signal(job.dim, derive_seed(seed, &[1]))?;
            Ok((ens, x))
        };
        let (ens, x) = match setup() {
            Ok(pair) => pair,
            Err(_) => {
                return cfg
                    .noise_models
                    .iter()
                    .map(|m| row(cfg, job, seed, format!("setup/{}", m.as_str()), None, 0.0))
                    .collect()
            }
        };
        let full = ens.full_frame();
        let mut rows = Vec::new();
        for (mi, &model) in cfg.noise_models.iter().enumerate() {
            let label = |method: &str| format!("{method}/{}", model.as_str());
            let noise = match NoiseRealization::sample(&ens, NoiseSpec::new(model, cfg.sigma), derive_seed(seed, &[2, mi as u64])) {
                Ok(noise) => noise,
                Err(_) => continue,
            };
            let Ok(data) = measure_with(&ens, &x, &noise) else { continue };

            let t = timed(|| procedure_b(&ens, &data, &cfg.prune).map(|r| r.estimate_vector()));
            rows.push(row(cfg, job, seed, label("procedure_b"), score(t.value, &x), t.seconds));

            let z = data.flattened();
            let t = timed(|| alternating_projections(&full, &z, &cfg.altproj));
            rows.push(row(cfg, job, seed, label("altproj_full"), score(t.value, &x), t.seconds));

            let t = timed(|| alternating_projections(ens.phi_v(), &data.vertex_z, &cfg.altproj));
            rows.push(row(cfg, job, seed, label("altproj_vertex"), score(t.value, &x), t.seconds));

            if model == crate::ensemble::NoiseModel::PreModulus {
                let linear = match ens.linear_measurements(&x) {
                    Ok(clean) => clean + CVector::from_column_slice(&noise.values),
                    Err(_) => continue,
                };
                let nv = ens.n_vertices();
                let t = timed(|| oracle_vertex_lsq(ens.phi_v(), &linear.rows(0, nv).into_owned()));
                rows.push(row(cfg, job, seed, label("oracle_vertex"), score(t.value, &x), t.seconds));
                let t = timed(|| oracle_full_lsq(&full, &linear));
                rows.push(row(cfg, job, seed, label("oracle_full"), score(t.value, &x), t.seconds));
            }
        }
        rows
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_grid() -> SweepConfig {
        SweepConfig { dims: vec![8], r_grid: vec![3.0], c_grid: vec![2.0], trials: 4, ..SweepConfig::noiseless_grid() }
    }

    #[test]
    fn one_row_per_trial_in_order() {
        let res = run_noiseless_grid(&tiny_grid()).unwrap();
        assert_eq!(res.rows.len(), 4);
        assert!(res.rows.iter().enumerate().all(|(i, r)| r.trial == i && r.runtime_s.is_none()));
        let cells = res.cells();
        assert_eq!(cells.len(), 1);
        assert!((0.0..=1.0).contains(&cells[0].proportion));
    }

    #[test]
    fn reruns_are_identical() {
        let cfg = tiny_grid();
        let a = run_noiseless_grid(&cfg).unwrap().to_csv_string().unwrap();
        let b = run_noiseless_grid(&cfg).unwrap().to_csv_string().unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("M,r,c,trial,seed,method,error,runtime_s,success\n"));
    }

    #[test]
    fn noisy_compare_emits_every_method() {
        let cfg = SweepConfig { dims: vec![8], trials: 1, record_timings: true, ..SweepConfig::noisy_compare() };
        let res = run_noisy_compare(&cfg).unwrap();
        let methods: Vec<&str> = res.rows.iter().map(|r| r.method.as_str()).collect();
        assert_eq!(
            methods,
            [
                "procedure_b/pre-modulus",
                "altproj_full/pre-modulus",
                "altproj_vertex/pre-modulus",
                "oracle_vertex/pre-modulus",
                "oracle_full/pre-modulus",
                "procedure_b/post-intensity",
                "altproj_full/post-intensity",
                "altproj_vertex/post-intensity",
            ]
        );
        assert!(res.rows.iter().all(|r| r.runtime_s.is_some()));
    }
}
