use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use hetnet_core::geometry::{ChordModel, MobilityConfig};
use hetnet_core::monte_carlo::OffsetCoupling;
use hetnet_core::presets::TttPreset;
use hetnet_core::stats::ks_statistic;
use hetnet_core::sweep::{self, Format, HistogramJob, Mode, SweepSpec};
use hetnet_core::trace::{self, FadingCase, RadioConfig};
use hetnet_core::CellGeometry;

/// Default output directory when `--out` is not given.
const OUT_DIR_VAR: &str = "HETNET_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "hetnet", version, about = "Handover failure and ping-pong analysis for macro/pico deployments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate failure probabilities over a velocity/TTT/T_d grid.
    Sweep(SweepArgs),
    /// Run the trace simulator and write offset histograms.
    Histograms(HistogramArgs),
    /// Run one trace and write its event log as JSON lines.
    Trace(TraceArgs),
    /// Compare bouncing-ring crossing chords with the three chord models.
    Bertrand(BertrandArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// analytic, semi-analytic or monte-carlo
    #[arg(long, default_value = "analytic")]
    mode: String,
    /// Coverage, macro-HF and pico-HF radii in metres.
    #[arg(long, default_value = "64,50,78")]
    geometry: String,
    /// km/h, comma separated.
    #[arg(long, default_value = "10,20,30,40,50,60,70,80,90,100,110,120")]
    velocities: String,
    /// Presets by name or TTT in ms, comma separated.
    #[arg(long = "ttt-set", default_value = "set1,set2,set3,set4")]
    ttt_set: String,
    /// L3 sampling periods in ms, comma separated.
    #[arg(long, default_value = "50,150,200")]
    td: String,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Histogram JSON file, or a directory with one file per grid point.
    #[arg(long)]
    histogram: Option<PathBuf>,
    /// Seconds.
    #[arg(long = "ping-pong-threshold", default_value_t = 1.0)]
    ping_pong_threshold: f64,
    /// shared or independent outbound offsets
    #[arg(long, default_value = "shared")]
    coupling: String,
    /// Output file; defaults to stdout, or a file in $HETNET_OUT_DIR when set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// TOML file whose keys override the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Keys accepted in a sweep config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    mode: Option<String>,
    geometry: Option<[f64; 3]>,
    velocities: Option<Vec<f64>>,
    ttt_set: Option<Vec<String>>,
    td: Option<Vec<f64>>,
    trials: Option<u64>,
    seed: Option<u64>,
    histogram: Option<PathBuf>,
    ping_pong_threshold: Option<f64>,
    coupling: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
}

#[derive(Args, Debug)]
struct HistogramArgs {
    /// Radio scenario TOML; defaults apply when omitted.
    #[arg(long)]
    radio: Option<PathBuf>,
    /// Fading cases, comma separated.
    #[arg(long, default_value = "1,2,3")]
    cases: String,
    #[arg(long, default_value = "10,20,30,40,50,60,70,80,90,100,110,120")]
    velocities: String,
    #[arg(long = "ttt-set", default_value = "set1,set2,set3,set4")]
    ttt_set: String,
    #[arg(long, default_value = "40,200")]
    td: String,
    #[arg(long = "min-triggers", default_value_t = 1000)]
    min_triggers: usize,
    /// Simulated seconds per point before giving up.
    #[arg(long = "max-duration", default_value_t = 1e7)]
    max_duration: f64,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory; falls back to $HETNET_OUT_DIR, then `histograms`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long)]
    radio: Option<PathBuf>,
    #[arg(long, default_value = "3")]
    case: String,
    /// km/h.
    #[arg(long, default_value_t = 60.0)]
    velocity: f64,
    #[arg(long = "ttt-set", default_value = "set1")]
    ttt_set: String,
    /// ms.
    #[arg(long, default_value_t = 200.0)]
    td: f64,
    /// Simulated seconds.
    #[arg(long, default_value_t = 3600.0)]
    duration: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON-lines event log; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BertrandArgs {
    #[arg(long = "ring-radius", default_value_t = 200.0)]
    ring_radius: f64,
    /// Radius of the circle whose crossing chords are measured.
    #[arg(long, default_value_t = 21.7)]
    inner: f64,
    #[arg(long, default_value_t = 100_000)]
    crossings: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn list<T>(s: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse).collect()
}

fn number(s: &str) -> Result<f64> {
    s.parse().with_context(|| format!("'{s}' is not a number"))
}

fn preset(s: &str) -> Result<TttPreset> {
    Ok(TttPreset::parse(s)?)
}

fn geometry(v: &[f64]) -> Result<CellGeometry> {
    match v {
        [r, rm, rp] => Ok(CellGeometry::new(*r, *rm, *rp)?),
        _ => bail!("--geometry needs three radii R,rm,rp"),
    }
}

fn coupling(s: &str) -> Result<OffsetCoupling> {
    match s.trim().to_ascii_lowercase().as_str() {
        "shared" => Ok(OffsetCoupling::Shared),
        "independent" => Ok(OffsetCoupling::Independent),
        _ => bail!("unknown coupling '{s}', expected shared or independent"),
    }
}

fn out_dir_default() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn load_radio(path: Option<&Path>) -> Result<RadioConfig> {
    Ok(match path {
        Some(p) => RadioConfig::load(p)?,
        None => RadioConfig::default(),
    })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode> {
    let file: SweepFile = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => SweepFile::default(),
    };
    let mode = Mode::parse(file.mode.as_deref().unwrap_or(&args.mode))?;
    let geometry = match file.geometry {
        Some(g) => geometry(&g)?,
        None => geometry(&list(&args.geometry, number)?)?,
    };
    let velocities = match file.velocities {
        Some(v) => v,
        None => list(&args.velocities, number)?,
    };
    let ttt_presets = match file.ttt_set {
        Some(v) => v.iter().map(|s| preset(s)).collect::<Result<_>>()?,
        None => list(&args.ttt_set, preset)?,
    };
    let t_d_values = match file.td {
        Some(v) => v,
        None => list(&args.td, number)?,
    };
    let format = Format::parse(file.format.as_deref().unwrap_or(&args.format))?;
    let spec = SweepSpec {
        geometry,
        velocities,
        ttt_presets,
        t_d_values,
        mode,
        histogram_path: file.histogram.or(args.histogram),
        trials: file.trials.unwrap_or(args.trials),
        seed: file.seed.unwrap_or(args.seed),
        ping_pong_threshold: file.ping_pong_threshold.unwrap_or(args.ping_pong_threshold),
        coupling: coupling(file.coupling.as_deref().unwrap_or(&args.coupling))?,
        pue_normalisation: Default::default(),
    };
    let out = file.out.or(args.out).or_else(|| {
        out_dir_default().map(|d| {
            let mode = match mode {
                Mode::Analytic => "analytic",
                Mode::SemiAnalytic => "semi_analytic",
                Mode::MonteCarlo => "monte_carlo",
            };
            d.join(format!("sweep_{mode}.{}", format.extension()))
        })
    });

    let result = sweep::run_sweep(&spec)?;
    let text = match format {
        Format::Csv => result.to_csv(),
        Format::Json => result.to_json(),
    };
    write_or_print(out.as_deref(), &text)?;
    if result.failures.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    let manifest = result.failures_to_json();
    if let Some(out) = &out {
        let path = out.with_extension("errors.json");
        std::fs::write(&path, &manifest).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{} grid point(s) failed:\n{manifest}", result.failures.len());
    Ok(ExitCode::from(2))
}

fn run_histograms(args: HistogramArgs) -> Result<ExitCode> {
    let job = HistogramJob {
        radio: load_radio(args.radio.as_deref())?,
        cases: list(&args.cases, |s| Ok(FadingCase::parse(s)?))?,
        velocities: list(&args.velocities, number)?,
        ttt_presets: list(&args.ttt_set, preset)?,
        t_d_values: list(&args.td, number)?,
        min_triggers: args.min_triggers,
        max_duration: args.max_duration,
        bins: args.bins,
        seed: args.seed,
    };
    let out = args
        .out
        .or_else(out_dir_default)
        .unwrap_or_else(|| PathBuf::from("histograms"));
    for path in sweep::generate_histograms(&job, &out)? {
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_single_trace(args: TraceArgs) -> Result<ExitCode> {
    let preset = preset(&args.ttt_set)?;
    let radio = load_radio(args.radio.as_deref())?
        .with_case(FadingCase::parse(&args.case)?)
        .with_l3_filter_index(preset.l3_filter_index());
    let mob = MobilityConfig::from_kmh_ms(args.velocity, preset.ttt_ms(), preset.ttt_ms(), args.td)?;
    let log = trace::run_trace(&radio, &mob, args.duration, args.seed)?;
    write_or_print(args.out.as_deref(), &log.to_jsonl())?;
    Ok(ExitCode::SUCCESS)
}

fn run_bertrand(args: BertrandArgs) -> Result<ExitCode> {
    if !(args.inner > 0.0 && args.inner <= args.ring_radius) {
        bail!("--inner must lie in (0, ring radius]");
    }
    let chords = trace::ring_crossing_chords(args.ring_radius, args.inner, args.crossings, args.seed);
    println!("model,ks");
    for model in ChordModel::ALL {
        let ks = ks_statistic(&chords, |l| model.cdf(l, args.inner));
        println!("{model:?},{ks:.6}");
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(a) => run_sweep(a),
        Command::Histograms(a) => run_histograms(a),
        Command::Trace(a) => run_single_trace(a),
        Command::Bertrand(a) => run_bertrand(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
