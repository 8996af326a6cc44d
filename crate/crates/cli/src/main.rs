//! `polarphase` command-line interface.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polarphase::baselines::{alternating_projections, AltProjParams};
use polarphase::ensemble::{
    design_a, design_b, erdos_renyi_design, gaussian_signal, measure, FrameKind, MeasurementEnsemble, NoiseModel,
    NoiseSpec,
};
use polarphase::experiments::{
    giant_component_fraction, minimize_redundancy, phase_transition_curve, redundancy, run_sweep, SweepConfig,
    SweepMode,
};
use polarphase::graph::{read_edge_list, spectral_summary, Graph};
use polarphase::io::{load_ensemble, load_intensities, load_signal, save_signal, write_intensities, EnsembleFile};
use polarphase::linalg::LeastSquares;
use polarphase::recovery::{
    estimate_projective_uniformity, procedure_a, procedure_b, PruneParams, RecoveryFlags, RecoveryReport,
    StageTiming, StageVertices,
};
use serde::Deserialize;

const EXIT_FAILURE: u8 = 1;
const EXIT_UNRECOVERABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "polarphase", version, about = "Phase retrieval from polarized interferometric measurements")]
struct Cli {
    /// Master random seed [default: 0, or the config's seed for `sweep`].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file (sweep parameters, or `prune`/`altproj` objects for `recover`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a measurement ensemble (JSON).
    Design(DesignArgs),
    /// Simulate intensity measurements of a signal (CSV).
    Measure(MeasureArgs),
    /// Reconstruct a signal from intensities (JSON report).
    Recover(RecoverArgs),
    /// Run a seeded experiment sweep (CSV).
    Sweep(SweepArgs),
    /// Connectivity and spectral statistics of an ensemble's graph (JSON).
    GraphStats(GraphStatsArgs),
    /// Monte-Carlo estimate of the projective uniformity of a vertex frame (JSON).
    PuEstimate(PuArgs),
    /// Samples of the phase-transition curve, giant-component fraction and redundancy (CSV).
    Curve(CurveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignModel {
    /// Erdős–Rényi graph on round(rM) vertices with edge probability c/n.
    ErdosRenyi,
    /// Certified random regular graph with the minimal vertex count.
    DesignA,
    /// Certified random regular graph on ⌈cM ln M⌉ vertices.
    DesignB,
}

#[derive(Clone, Copy, ValueEnum)]
enum Frame {
    Gaussian,
    Dft,
}

#[derive(Args)]
struct DesignArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, value_enum, default_value_t = DesignModel::ErdosRenyi)]
    model: DesignModel,
    /// Vertices per dimension (Erdős–Rényi).
    #[arg(long, default_value_t = 3.0)]
    r: f64,
    /// Mean degree (Erdős–Rényi) or vertex-count factor (design B).
    #[arg(long, default_value_t = 8.0)]
    c: f64,
    /// Degree of the regular graph (designs A and B).
    #[arg(long, default_value_t = 8)]
    degree: usize,
    /// Spectral slack ε of the regular-graph designs.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Vertex frame (design A only; the others use Gaussian frames).
    #[arg(long, value_enum, default_value_t = Frame::Gaussian)]
    frame: Frame,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    PostIntensity,
    PreModulus,
}

impl From<NoiseArg> for NoiseModel {
    fn from(n: NoiseArg) -> Self {
        match n {
            NoiseArg::PostIntensity => NoiseModel::PostIntensity,
            NoiseArg::PreModulus => NoiseModel::PreModulus,
        }
    }
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    ensemble: PathBuf,
    /// Signal JSON; a seeded Gaussian signal is drawn when omitted.
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Where to save the drawn signal.
    #[arg(long)]
    signal_out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[arg(long, value_enum, default_value_t = NoiseArg::PostIntensity)]
    noise: NoiseArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    A,
    B,
    Altproj,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long)]
    ensemble: PathBuf,
    #[arg(long)]
    intensities: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// True signal; when given the report includes the aligned error.
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    NoiselessGrid,
    NoisyCompare,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::NoiselessGrid)]
    mode: ModeArg,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated signal dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<f64>>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Record wall-clock runtimes (makes the CSV run-dependent).
    #[arg(long)]
    timings: bool,
    /// Write sweep metadata (seed, config hash, version) as JSON here.
    #[arg(long)]
    meta_out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphStatsArgs {
    /// Ensemble JSON whose graph is analysed.
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    ensemble: Option<PathBuf>,
    /// Edge-list file (`n_vertices=<n>` header, then `tail head` lines).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Include the full Laplacian spectrum.
    #[arg(long)]
    eigenvalues: bool,
}

#[derive(Args)]
struct PuArgs {
    #[arg(long)]
    ensemble: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 1.05)]
    r_min: f64,
    #[arg(long, default_value_t = 4.0)]
    r_max: f64,
    #[arg(long, default_value_t = 60)]
    steps: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let unrecoverable = matches!(cli.command, Command::Recover(_))
                && matches!(err.downcast_ref::<polarphase::Error>(), Some(polarphase::Error::Unrecoverable { .. }));
            ExitCode::from(if unrecoverable { EXIT_UNRECOVERABLE } else { EXIT_FAILURE })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Design(args) => design(cli, args),
        Command::Measure(args) => measure_cmd(cli, args),
        Command::Recover(args) => recover(cli, args),
        Command::Sweep(args) => sweep(cli, args),
        Command::GraphStats(args) => graph_stats(cli, args),
        Command::PuEstimate(args) => pu_estimate(cli, args),
        Command::Curve(args) => curve(cli, args),
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => io::stdout().write_all(bytes).context("cannot write to stdout"),
    }
}

fn emit_json<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn design(cli: &Cli, args: &DesignArgs) -> Result<()> {
    let ens = match args.model {
        DesignModel::ErdosRenyi => erdos_renyi_design(args.dim, args.r, args.c, cli.seed())?,
        DesignModel::DesignA => {
            let frame = match args.frame {
                Frame::Gaussian => FrameKind::Gaussian,
                Frame::Dft => FrameKind::Dft,
            };
            design_a(args.dim, args.degree, args.eps, frame, cli.seed())?
        }
        DesignModel::DesignB => design_b(args.dim, args.degree, args.eps, args.c, cli.seed())?,
    };
    emit_json(&cli.out, &EnsembleFile::from(&ens))
}

fn measure_cmd(cli: &Cli, args: &MeasureArgs) -> Result<()> {
    let ens = load_ensemble(&args.ensemble)?;
    let x = match &args.signal {
        Some(path) => load_signal(path)?,
        None => gaussian_signal(ens.dim(), polarphase::rng::derive_seed(cli.seed(), &[0]))?,
    };
    if let Some(path) = &args.signal_out {
        save_signal(path, &x)?;
    }
    let spec = NoiseSpec::new(args.noise.into(), args.sigma);
    let data = measure(&ens, &x, spec, polarphase::rng::derive_seed(cli.seed(), &[1]))?;
    let mut buf = Vec::new();
    write_intensities(&mut buf, &data)?;
    emit(&cli.out, &buf)
}

#[derive(Default, Deserialize)]
#[serde(default)]
struct RecoverConfig {
    prune: PruneParams,
    altproj: AltProjParams,
}

fn recover(cli: &Cli, args: &RecoverArgs) -> Result<()> {
    let cfg: RecoverConfig = match &cli.config {
        Some(path) => serde_json::from_str(&read_text(path)?).with_context(|| format!("bad config {}", path.display()))?,
        None => RecoverConfig::default(),
    };
    let mut prune = cfg.prune;
    prune.alpha = args.alpha.unwrap_or(prune.alpha);
    prune.tau = args.tau.unwrap_or(prune.tau);
    prune.kappa = args.kappa.unwrap_or(prune.kappa);

    let ens = load_ensemble(&args.ensemble)?;
    let data = load_intensities(&args.intensities)?;
    let mut report = match args.method {
        Method::A => procedure_a(&ens, &data, &prune)?,
        Method::B => procedure_b(&ens, &data, &prune)?,
        Method::Altproj => altproj_report(&ens, &data.flattened(), &cfg.altproj)?,
    };
    if let Some(path) = &args.truth {
        report.score(&load_signal(path)?)?;
    }
    emit_json(&cli.out, &report)
}

fn altproj_report(ens: &MeasurementEnsemble, z: &[f64], params: &AltProjParams) -> Result<RecoveryReport> {
    let start = Instant::now();
    let full = ens.full_frame();
    let estimate = alternating_projections(&full, z, params)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(RecoveryReport {
        method: "altproj".into(),
        estimate: estimate.iter().copied().collect(),
        aligned_error: None,
        global_phase: None,
        surviving_vertices: vec![StageVertices { stage: "all".into(), vertices: (0..ens.n_vertices()).collect() }],
        spectral_gap_final: None,
        min_edge_magnitude: None,
        sigma_min: LeastSquares::new(&full)?.sigma_min(),
        connectivity_rounds: 0,
        flags: RecoveryFlags::default(),
        timings: vec![StageTiming { stage: "alternating-projections".into(), seconds }],
    })
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<()> {
    let mode = match args.mode {
        ModeArg::NoiselessGrid => SweepMode::NoiselessGrid,
        ModeArg::NoisyCompare => SweepMode::NoisyCompare,
    };
    let mut cfg = match &cli.config {
        Some(path) => SweepConfig::from_json(&read_text(path)?, mode).with_context(|| format!("bad config {}", path.display()))?,
        None => SweepConfig::for_mode(mode),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(d) = &args.dims {
        cfg.dims = d.clone();
    }
    if let Some(r) = &args.r {
        cfg.r_grid = r.clone();
    }
    if let Some(c) = &args.c {
        cfg.c_grid = c.clone();
    }
    if let Some(s) = args.sigma {
        cfg.sigma = s;
    }
    cfg.record_timings |= args.timings;
    let result = run_sweep(&cfg)?;
    if let Some(path) = &args.meta_out {
        let text = serde_json::to_string_pretty(&result.metadata)? + "\n";
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(&cli.out, result.to_csv_string()?.as_bytes())
}

#[derive(serde::Serialize)]
struct GraphStats {
    n_vertices: usize,
    n_edges: usize,
    min_degree: usize,
    max_degree: usize,
    mean_degree: f64,
    components: usize,
    largest_component: usize,
    spectral_gap: Option<f64>,
    expansion: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<f64>>,
}

fn graph_stats(cli: &Cli, args: &GraphStatsArgs) -> Result<()> {
    let graph: Graph = match (&args.ensemble, &args.edges) {
        (Some(path), _) => load_ensemble(path)?.graph().clone(),
        (None, Some(path)) => read_edge_list(&read_text(path)?).with_context(|| format!("bad edge list {}", path.display()))?,
        (None, None) => bail!("either --ensemble or --edges is required"),
    };
    let degrees = graph.degrees();
    let spectrum = spectral_summary(&graph).ok();
    let stats = GraphStats {
        n_vertices: graph.n_vertices(),
        n_edges: graph.n_edges(),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        mean_degree: if degrees.is_empty() { 0.0 } else { 2.0 * graph.n_edges() as f64 / degrees.len() as f64 },
        components: graph.connected_components().len(),
        largest_component: graph.largest_component().len(),
        spectral_gap: spectrum.as_ref().map(|s| s.spectral_gap),
        expansion: spectrum.as_ref().map(|s| s.expansion),
        eigenvalues: if args.eigenvalues { spectrum.map(|s| s.eigenvalues) } else { None },
    };
    emit_json(&cli.out, &stats)
}

fn pu_estimate(cli: &Cli, args: &PuArgs) -> Result<()> {
    let ens = load_ensemble(&args.ensemble)?;
    let estimate = estimate_projective_uniformity(ens.phi_v(), args.alpha, args.samples, cli.seed())?;
    emit_json(&cli.out, &serde_json::json!({ "alpha": args.alpha, "samples": args.samples, "estimate": estimate }))
}

fn curve(cli: &Cli, args: &CurveArgs) -> Result<()> {
    if !(args.r_min > 1.0 && args.r_max >= args.r_min) || args.steps < 2 {
        bail!("need 1 < r-min ≤ r-max and at least 2 steps");
    }
    let mut out = String::from("r,c,beta,redundancy\n");
    for i in 0..args.steps {
        let r = args.r_min + (args.r_max - args.r_min) * i as f64 / (args.steps - 1) as f64;
        let c = phase_transition_curve(r)?;
        out += &format!("{r},{c},{},{}\n", giant_component_fraction(c)?, redundancy(r)?);
    }
    let (r_star, value) = minimize_redundancy();
    eprintln!("redundancy minimum N/M = {value:.4} at r = {r_star:.4}");
    emit(&cli.out, out.as_bytes())
}
