use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use topotip::entropy::{align_cycles, point_level_field};
use topotip::geodesic::{
    baseline_curves, dynamic_curves, equidistant_keyframes, CurveConfig, IndicatorTable,
};
use topotip::mtn::build_mtn;
use topotip::point_data::{
    fmt_real, load_sequence, save_sequence, save_table, SequenceDataset, SequenceFormat,
};
use topotip::synth::{
    linspace, make_sequence, simulate_dorsogna, DorsognaParams, McmcConfig, PotentialKind,
};
use topotip::tpot::solve_tpot;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(
    name = "topotip",
    version,
    about = "Topological tipping-point indicators for evolving point clouds"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "TOPOTIP_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic sequence CSV.
    Synth(SynthArgs),
    /// Indicator curves between consecutive observed frames.
    Baseline(AnalysisArgs),
    /// Indicator curves along reconstructed geodesics between keyframes.
    Interp(InterpArgs),
    /// Per-point entropy change scores between two frames.
    Pointfield(PointfieldArgs),
    /// Run the built-in oracle checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    /// Radially symmetric quartic potential (bifurcation at h = 0).
    Rvp,
    /// Double-well potential (negative control).
    Dwell,
    /// Self-propelled swarm with Morse interactions.
    Dorsogna,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(value_enum)]
    pub system: System,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of frames on the h grid.
    #[arg(long, default_value_t = 51)]
    pub frames: usize,
    /// First h value (default -1 for rvp, 1 for dwell).
    #[arg(long, allow_hyphen_values = true)]
    pub h_start: Option<f64>,
    /// Last h value (default 1 for rvp, -1 for dwell).
    #[arg(long, allow_hyphen_values = true)]
    pub h_end: Option<f64>,
    /// Noise temperature (default 0.001 for rvp, 0.04 for dwell).
    #[arg(long)]
    pub temperature: Option<f64>,
    /// Samples per frame.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, default_value_t = 5000)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 10)]
    pub thin: usize,
    /// Proposal standard deviation; defaults to `step_factor * sqrt(T)`.
    #[arg(long)]
    pub step_scale: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub step_factor: f64,
    /// Independent chains (default one per sample).
    #[arg(long)]
    pub chains: Option<usize>,
    /// Swarm snapshots, evenly spaced from `t_start` to `t_end`.
    #[arg(long, default_value_t = 61)]
    pub snapshots: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t_start: f64,
    #[arg(long, default_value_t = 60.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 300)]
    pub particles: usize,
    #[arg(long, default_value_t = 1.0)]
    pub self_prop: f64,
    #[arg(long, default_value_t = 0.5)]
    pub friction: f64,
    #[arg(long, default_value_t = 0.5)]
    pub attract_strength: f64,
    #[arg(long, default_value_t = 2.0)]
    pub attract_range: f64,
    #[arg(long, default_value_t = 1.0)]
    pub repel_strength: f64,
    #[arg(long, default_value_t = 0.5)]
    pub repel_range: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalysisArgs {
    /// Sequence CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Indicator CSV; sidecars are written next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InterpArgs {
    #[command(flatten)]
    pub common: AnalysisArgs,
    /// Keyframe indices, comma separated and increasing.
    #[arg(long, value_delimiter = ',', conflicts_with = "n_keyframes")]
    pub keyframes: Option<Vec<usize>>,
    /// Number of equidistant keyframes (used when `--keyframes` is absent).
    #[arg(long, default_value_t = 4)]
    pub n_keyframes: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointfieldArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Reference frame index.
    #[arg(long)]
    pub frame_a: usize,
    /// Target frame index; scores live on its points.
    #[arg(long)]
    pub frame_b: usize,
    /// Smoothing added to column sums before normalizing.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// `<dir>/<stem><suffix>` for an output path.
pub fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}"))
}

fn write_json_atomic(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    let io = |e: std::io::Error| CliError::Core(e.into());
    fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(&bytes))
        .map_err(io)?;
    fs::rename(&tmp, path).map_err(io)?;
    Ok(())
}

fn echo_config(
    out: &Path,
    command: &str,
    args: &impl Serialize,
    resolved: &impl Serialize,
) -> CliResult<()> {
    let record = serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "args": args,
        "resolved": resolved,
    });
    write_json_atomic(&sidecar(out, ".config.json"), &record)
}

fn load(input: &Path) -> CliResult<SequenceDataset> {
    Ok(load_sequence(input, SequenceFormat::Csv)?)
}

pub fn run(cli: Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Config("threads must be >= 1".into()));
        }
        // A pool may already exist when called as a library; keep it then.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match cli.command {
        Command::Synth(a) => cmd_synth(&a),
        Command::Baseline(a) => cmd_baseline(&a),
        Command::Interp(a) => cmd_interp(&a),
        Command::Pointfield(a) => cmd_pointfield(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    }
}

#[derive(Serialize)]
#[serde(tag = "system", rename_all = "snake_case")]
enum SynthResolved {
    Potential {
        kind: PotentialKind,
        h_grid: Vec<f64>,
        temperature: f64,
        points: usize,
        mcmc: McmcConfig,
        seed: u64,
    },
    Dorsogna {
        params: DorsognaParams,
        seed: u64,
    },
}

pub fn cmd_synth(a: &SynthArgs) -> CliResult<()> {
    let (seq, resolved) = match a.system {
        System::Rvp | System::Dwell => {
            let (kind, h0, h1, t) = match a.system {
                System::Rvp => (PotentialKind::Rvp, -1.0, 1.0, 0.001),
                _ => (PotentialKind::DoubleWell, 1.0, -1.0, 0.04),
            };
            if a.frames == 0 || a.points == 0 {
                return Err(CliError::Config("frames and points must be >= 1".into()));
            }
            let h_grid = linspace(a.h_start.unwrap_or(h0), a.h_end.unwrap_or(h1), a.frames);
            let temperature = a.temperature.unwrap_or(t);
            let mcmc = McmcConfig {
                burn_in: a.burn_in,
                thin: a.thin,
                step_scale: a.step_scale,
                step_factor: a.step_factor,
                chains: a.chains,
                ..McmcConfig::default()
            };
            mcmc.validate(temperature)?;
            let seq = make_sequence(kind, &h_grid, temperature, a.points, &mcmc, a.seed)?;
            let resolved = SynthResolved::Potential {
                kind,
                h_grid,
                temperature,
                points: a.points,
                mcmc,
                seed: a.seed,
            };
            (seq, resolved)
        }
        System::Dorsogna => {
            let params = DorsognaParams {
                n_particles: a.particles,
                self_prop: a.self_prop,
                friction: a.friction,
                attract_strength: a.attract_strength,
                attract_range: a.attract_range,
                repel_strength: a.repel_strength,
                repel_range: a.repel_range,
                dt: a.dt,
                snapshot_times: linspace(a.t_start, a.t_end, a.snapshots),
                ..DorsognaParams::default()
            };
            params.validate()?;
            let seq = simulate_dorsogna(&params, a.seed)?;
            (
                seq,
                SynthResolved::Dorsogna {
                    params,
                    seed: a.seed,
                },
            )
        }
    };
    save_sequence(&seq, &a.out)?;
    echo_config(&a.out, "synth", a, &resolved)?;
    eprintln!("wrote {} frames to {}", seq.len(), a.out.display());
    Ok(())
}

/// Runs `job` once per label (or once on the whole sequence) and writes the
/// indicator table plus its diagnostics sidecar for each.
fn per_label<F>(seq: &SequenceDataset, out: &Path, job: F) -> CliResult<()>
where
    F: Fn(&SequenceDataset) -> topotip::Result<IndicatorTable> + Sync,
{
    let jobs: Vec<(PathBuf, SequenceDataset)> = if seq.has_labels() {
        seq.split_by_label()?
            .into_iter()
            .map(|(k, s)| (sidecar(out, &format!(".label-{k}.csv")), s))
            .collect()
    } else {
        vec![(out.to_path_buf(), seq.clone())]
    };
    let results: Vec<(PathBuf, IndicatorTable)> = jobs
        .into_par_iter()
        .map(|(path, s)| {
            let table = job(&s)?;
            table.save_csv(&path)?;
            table.save_diagnostics(sidecar(&path, ".diagnostics.csv"))?;
            Ok((path, table))
        })
        .collect::<CliResult<_>>()?;
    for (path, table) in &results {
        summarize(path, table);
    }
    Ok(())
}

fn summarize(path: &Path, table: &IndicatorTable) {
    let outer = table.n_unconverged();
    let inner = table.rows.iter().filter(|r| !r.sinkhorn_converged).count();
    let degenerate = table.rows.iter().filter(|r| r.degenerate).count();
    if outer + inner + degenerate > 0 {
        eprintln!(
            "warning: {}: {} of {} rows: outer loop unconverged {}, sinkhorn unconverged {}, degenerate entropy {}",
            path.display(),
            outer.max(inner).max(degenerate),
            table.len(),
            outer,
            inner,
            degenerate
        );
    }
    eprintln!("wrote {} rows to {}", table.len(), path.display());
}

pub fn cmd_baseline(a: &AnalysisArgs) -> CliResult<()> {
    let cfg = a.run.curve_config()?;
    let seq = load(&a.input)?;
    echo_config(&a.out, "baseline", a, &cfg)?;
    per_label(&seq, &a.out, |s| baseline_curves(s, &cfg))
}

#[derive(Serialize)]
struct InterpResolved<'a> {
    curves: &'a CurveConfig,
    keyframes: &'a [usize],
}

pub fn cmd_interp(a: &InterpArgs) -> CliResult<()> {
    let cfg = a.common.run.curve_config()?;
    let seq = load(&a.common.input)?;
    let keyframes = match &a.keyframes {
        Some(k) => k.clone(),
        None => equidistant_keyframes(seq.len(), a.n_keyframes)?,
    };
    if keyframes.len() < 2 || keyframes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config(
            "keyframes must be at least two increasing indices".into(),
        ));
    }
    if let Some(&k) = keyframes.iter().find(|&&k| k >= seq.len()) {
        return Err(CliError::Config(format!(
            "keyframe {k} out of range for {} frames",
            seq.len()
        )));
    }
    let resolved = InterpResolved {
        curves: &cfg,
        keyframes: &keyframes,
    };
    echo_config(&a.common.out, "interp", a, &resolved)?;
    per_label(&seq, &a.common.out, |s| dynamic_curves(s, &keyframes, &cfg))
}

pub fn cmd_pointfield(a: &PointfieldArgs) -> CliResult<()> {
    let cfg = a.run.curve_config()?;
    if !(a.eps > 0.0 && a.eps.is_finite()) {
        return Err(CliError::Config(format!("eps must be > 0, got {}", a.eps)));
    }
    let seq = load(&a.input)?;
    for f in [a.frame_a, a.frame_b] {
        if f >= seq.len() {
            return Err(CliError::Config(format!(
                "frame {f} out of range for {} frames",
                seq.len()
            )));
        }
    }
    echo_config(&a.out, "pointfield", a, &cfg)?;
    let (fa, fb) = (&seq.frames()[a.frame_a], &seq.frames()[a.frame_b]);
    let (p, q) = (build_mtn(fa, &cfg.mtn)?, build_mtn(fb, &cfg.mtn)?);
    let sol = solve_tpot(&p, &q, &cfg.tpot)?;
    if !sol.converged || !sol.sinkhorn_converged {
        eprintln!(
            "warning: transport solve unconverged (outer {}, sinkhorn {})",
            sol.converged, sol.sinkhorn_converged
        );
    }
    let align = align_cycles(&sol.coupling.pi_e, cfg.matching)?;
    let field = point_level_field(p.incidence(), q.incidence(), &align, a.eps)?;
    if field.degenerate {
        eprintln!("warning: a frame has a single point; cycle entropies set to 0");
    }
    let d = fb.dim();
    let mut header = vec!["point_id".to_string()];
    header.extend((0..d).map(|k| format!("x{k}")));
    header.push("score".into());
    let rows: Vec<Vec<String>> = (0..fb.len())
        .map(|i| {
            let mut r = vec![i.to_string()];
            r.extend(fb.coords().row(i).iter().map(|&v| fmt_real(v)));
            r.push(fmt_real(field.scores[i]));
            r
        })
        .collect();
    save_table(&a.out, &header, &rows)?;
    eprintln!("wrote {} scores to {}", rows.len(), a.out.display());
    Ok(())
}

pub fn cmd_selftest(a: &SelftestArgs) -> CliResult<()> {
    let checks = selftest::run_all(a.seed);
    for c in &checks {
        println!("{}", c.line());
    }
    match checks.iter().filter(|c| !c.passed).count() {
        0 => Ok(()),
        n => Err(CliError::SelfTest(n)),
    }
}
