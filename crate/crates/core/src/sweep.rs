//! Parameter sweeps over velocity, TTT preset and `T_d`, histogram
//! generation from the trace simulator, and CSV/JSON export.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, ProbabilityKind};
use crate::error::{Error, Result};
use crate::geometry::{CellGeometry, MobilityConfig};
use crate::monte_carlo::{self, OffsetCoupling, PueNormalisation, TrialSpec, MIN_TRIALS};
use crate::offset::Histogram;
use crate::presets::TttPreset;
use crate::semi_analytic;
use crate::trace::{self, Environment, FadingCase, RadioConfig};

/// Velocities of the default grid, km/h.
pub const DEFAULT_VELOCITIES: [f64; 12] = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 110.0, 120.0];
/// `T_d` values of the default no-fading grid, ms.
pub const NO_FADING_TD: [f64; 3] = [50.0, 150.0, 200.0];
/// `T_d` values of the default fading grid, ms.
pub const FADING_TD: [f64; 2] = [40.0, 200.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Analytic,
    SemiAnalytic,
    MonteCarlo,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "analytic" => Ok(Self::Analytic),
            "semi-analytic" | "semianalytic" => Ok(Self::SemiAnalytic),
            "monte-carlo" | "montecarlo" | "mc" => Ok(Self::MonteCarlo),
            _ => Err(Error::Config(format!("unknown mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Nho,
    MueHf,
    PueHf,
    PingPong,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nho => "nho",
            Self::MueHf => "mue_hf",
            Self::PueHf => "pue_hf",
            Self::PingPong => "ping_pong",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub geometry: CellGeometry,
    /// km/h.
    pub velocities: Vec<f64>,
    pub ttt_presets: Vec<TttPreset>,
    /// ms.
    pub t_d_values: Vec<f64>,
    pub mode: Mode,
    /// One histogram file for every point, or a directory holding one file
    /// per point named by [`histogram_file_name`].
    pub histogram_path: Option<PathBuf>,
    pub trials: u64,
    pub seed: u64,
    /// Seconds.
    pub ping_pong_threshold: f64,
    pub coupling: OffsetCoupling,
    pub pue_normalisation: PueNormalisation,
}

impl SweepSpec {
    /// Default no-fading grid for `mode`.
    pub fn default_grid(mode: Mode) -> Self {
        Self {
            geometry: CellGeometry::default(),
            velocities: DEFAULT_VELOCITIES.to_vec(),
            ttt_presets: TttPreset::ALL.to_vec(),
            t_d_values: NO_FADING_TD.to_vec(),
            mode,
            histogram_path: None,
            trials: 1_000_000,
            seed: 0,
            ping_pong_threshold: 1.0,
            // the closed forms reuse one offset on both legs
            coupling: OffsetCoupling::Shared,
            pue_normalisation: PueNormalisation::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.velocities.is_empty() || self.ttt_presets.is_empty() || self.t_d_values.is_empty() {
            return Err(Error::Config("sweep grids must not be empty".into()));
        }
        if let Some(v) = self.velocities.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::Config(format!("velocity must be finite and non-negative, got {v}")));
        }
        if let Some(t) = self.t_d_values.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
            return Err(Error::Config(format!("T_d must be finite and positive, got {t}")));
        }
        if self.mode == Mode::MonteCarlo && self.trials < MIN_TRIALS {
            return Err(Error::Config(format!(
                "Monte Carlo sweeps need at least {MIN_TRIALS} trials, got {}",
                self.trials
            )));
        }
        match (self.mode, &self.histogram_path) {
            (Mode::SemiAnalytic, None) => {
                return Err(Error::Config("semi-analytic mode needs a histogram path".into()))
            }
            (Mode::Analytic | Mode::MonteCarlo, Some(_)) => {
                return Err(Error::Config("a histogram path is only used in semi-analytic mode".into()))
            }
            _ => {}
        }
        if !(self.ping_pong_threshold > 0.0) {
            return Err(Error::Config("ping-pong threshold must be positive".into()));
        }
        Ok(())
    }

    fn points(&self) -> Vec<GridPoint> {
        let mut points = Vec::new();
        for &v in &self.velocities {
            for &p in &self.ttt_presets {
                for &td in &self.t_d_values {
                    points.push(GridPoint {
                        velocity_kmh: v,
                        preset: p,
                        td_ms: td,
                    });
                }
            }
        }
        points.sort_by(|a, b| a.key().partial_cmp(&b.key()).expect("finite grid"));
        points.dedup_by(|a, b| a.key() == b.key());
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct GridPoint {
    velocity_kmh: f64,
    preset: TttPreset,
    td_ms: f64,
}

impl GridPoint {
    fn key(&self) -> (f64, f64, f64) {
        (self.velocity_kmh, self.preset.ttt_ms(), self.td_ms)
    }

    fn mobility(&self) -> Result<MobilityConfig> {
        let ttt = self.preset.ttt_ms();
        MobilityConfig::from_kmh_ms(self.velocity_kmh, ttt, ttt, self.td_ms)
    }

    fn seed(&self, base: u64) -> u64 {
        let mut h = splitmix(base);
        for x in [self.velocity_kmh, self.preset.ttt_ms(), self.td_ms] {
            h = splitmix(h ^ x.to_bits());
        }
        h
    }
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub velocity_kmh: f64,
    pub ttt_ms: f64,
    pub td_ms: f64,
    pub metric: Metric,
    pub value: f64,
    /// 95% half-width, Monte Carlo only.
    pub ci: Option<f64>,
}

/// A grid point that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub velocity_kmh: f64,
    pub ttt_ms: f64,
    pub td_ms: f64,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<PointFailure>,
}

impl SweepResult {
    pub fn value(&self, velocity_kmh: f64, ttt_ms: f64, td_ms: f64, metric: Metric) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.velocity_kmh == velocity_kmh && r.ttt_ms == ttt_ms && r.td_ms == td_ms && r.metric == metric)
            .map(|r| r.value)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["velocity_kmh", "ttt_ms", "td_ms", "metric", "value", "ci"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                format_sig(r.velocity_kmh),
                format_sig(r.ttt_ms),
                format_sig(r.td_ms),
                r.metric.to_string(),
                format_sig(r.value),
                r.ci.map(format_sig).unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<SweepRow> = self.rows.iter().map(rounded_row).collect();
        serde_json::to_string_pretty(&rows).expect("rows serialise")
    }

    /// Reads rows written by [`Self::to_json`]; failures are not stored there.
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        Ok(Self {
            rows: serde_json::from_str(text)?,
            failures: Vec::new(),
        })
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<Vec<SweepRow>, _>>()
            .map_err(|e| Error::Config(format!("malformed sweep CSV: {e}")))?;
        Ok(Self { rows, failures: Vec::new() })
    }

    pub fn failures_to_json(&self) -> String {
        serde_json::to_string_pretty(&self.failures).expect("failures serialise")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Config(format!("unknown format '{s}'"))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

pub fn export(result: &SweepResult, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = match format {
        Format::Csv => result.to_csv(),
        Format::Json => result.to_json(),
    };
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Rounds to 9 significant digits.
fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

fn format_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn rounded_row(r: &SweepRow) -> SweepRow {
    SweepRow {
        velocity_kmh: round_sig(r.velocity_kmh),
        ttt_ms: round_sig(r.ttt_ms),
        td_ms: round_sig(r.td_ms),
        metric: r.metric,
        value: round_sig(r.value),
        ci: r.ci.map(round_sig),
    }
}

/// File name of the histogram for one grid point inside a histogram directory.
pub fn histogram_file_name(ttt_ms: f64, velocity_kmh: f64, td_ms: f64) -> String {
    format!("ttt{ttt_ms}_v{velocity_kmh}_td{td_ms}.json")
}

enum HistogramSource {
    None,
    Single(Histogram),
    Directory(PathBuf),
}

impl HistogramSource {
    fn open(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(Self::None) };
        let meta = std::fs::metadata(path).map_err(|e| Error::io(path, e))?;
        if meta.is_dir() {
            Ok(Self::Directory(path.to_path_buf()))
        } else {
            Ok(Self::Single(Histogram::load(path)?))
        }
    }

    fn for_point(&self, p: &GridPoint) -> Result<Option<Histogram>> {
        match self {
            Self::None => Ok(None),
            Self::Single(h) => Ok(Some(h.clone())),
            Self::Directory(dir) => {
                let name = histogram_file_name(p.preset.ttt_ms(), p.velocity_kmh, p.td_ms);
                Histogram::load(dir.join(name)).map(Some)
            }
        }
    }
}

/// Evaluates every grid point. Points that fail are listed in
/// [`SweepResult::failures`]; an invalid spec or an unreadable histogram
/// path fails the whole sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let source = HistogramSource::open(spec.histogram_path.as_deref())?;
    let evaluated: Vec<(GridPoint, Result<Vec<SweepRow>>)> = spec
        .points()
        .into_par_iter()
        .map(|p| {
            let rows = evaluate_point(spec, &source, &p);
            (p, rows)
        })
        .collect();
    let mut out = SweepResult::default();
    for (p, rows) in evaluated {
        match rows {
            Ok(rows) => out.rows.extend(rows),
            Err(e) => out.failures.push(PointFailure {
                velocity_kmh: p.velocity_kmh,
                ttt_ms: p.preset.ttt_ms(),
                td_ms: p.td_ms,
                error: e.to_string(),
            }),
        }
    }
    Ok(out)
}

fn evaluate_point(spec: &SweepSpec, source: &HistogramSource, p: &GridPoint) -> Result<Vec<SweepRow>> {
    let geom = &spec.geometry;
    let mob = p.mobility()?;
    let row = |metric, value: f64, ci| SweepRow {
        velocity_kmh: p.velocity_kmh,
        ttt_ms: p.preset.ttt_ms(),
        td_ms: p.td_ms,
        metric,
        value,
        ci,
    };
    let values = match spec.mode {
        Mode::Analytic => vec![
            row(Metric::Nho, analytic::nho_probability(geom, &mob), None),
            row(Metric::MueHf, analytic::mue_hf_probability(geom, &mob)?, None),
            row(Metric::PueHf, analytic::pue_hf_probability(geom, &mob)?, None),
        ],
        Mode::SemiAnalytic => {
            let h = source.for_point(p)?.expect("validated: semi-analytic has a histogram");
            let pue = match spec.coupling {
                OffsetCoupling::Shared => semi_analytic::pue_hf_empirical(geom, &mob, &h)?,
                OffsetCoupling::Independent => semi_analytic::pue_hf_empirical_independent(geom, &mob, &h)?,
            };
            vec![
                row(Metric::Nho, semi_analytic::nho_empirical(geom, &mob, &h)?, None),
                row(Metric::MueHf, semi_analytic::mue_hf_empirical(geom, &mob, &h)?, None),
                row(Metric::PueHf, pue, None),
            ]
        }
        Mode::MonteCarlo => {
            let trial = TrialSpec::uniform(*geom, mob)?
                .with_coupling(spec.coupling)
                .with_ping_pong_threshold(spec.ping_pong_threshold)
                .with_pue_normalisation(spec.pue_normalisation);
            let counts = monte_carlo::simulate(&trial, spec.trials, p.seed(spec.seed))?;
            let est = |kind| counts.estimate(kind, spec.pue_normalisation);
            let nho = est(ProbabilityKind::Nho);
            let mue = est(ProbabilityKind::MueHf);
            let pue = est(ProbabilityKind::PueHf);
            let pp = counts.ping_pong();
            vec![
                row(Metric::Nho, nho.p_hat, Some(nho.half_width_95)),
                row(Metric::MueHf, mue.p_hat, Some(mue.half_width_95)),
                row(Metric::PueHf, pue.p_hat, Some(pue.half_width_95)),
                row(Metric::PingPong, pp.p_hat, Some(pp.half_width_95)),
            ]
        }
    };
    Ok(values)
}

/// Trace-simulator settings for [`generate_histograms`].
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramJob {
    pub radio: RadioConfig,
    pub cases: Vec<FadingCase>,
    /// km/h.
    pub velocities: Vec<f64>,
    pub ttt_presets: Vec<TttPreset>,
    /// ms.
    pub t_d_values: Vec<f64>,
    pub min_triggers: usize,
    /// Simulated seconds per point before giving up.
    pub max_duration: f64,
    pub bins: usize,
    pub seed: u64,
}

impl Default for HistogramJob {
    fn default() -> Self {
        Self {
            radio: RadioConfig::default(),
            cases: FadingCase::ALL.to_vec(),
            velocities: DEFAULT_VELOCITIES.to_vec(),
            ttt_presets: TttPreset::ALL.to_vec(),
            t_d_values: FADING_TD.to_vec(),
            min_triggers: 1000,
            max_duration: 1e7,
            bins: 20,
            seed: 0,
        }
    }
}

/// Directory holding the histograms of one fading case under `out_dir`.
pub fn case_dir(out_dir: impl AsRef<Path>, case: FadingCase) -> PathBuf {
    out_dir.as_ref().join(format!("case{}", case.index()))
}

/// Offset histogram for one (case, velocity, preset, `T_d`) point. Traces of
/// the same case and seed walk the same shadowing fields.
pub fn trace_histogram(
    env: &Environment,
    radio: &RadioConfig,
    velocity_kmh: f64,
    preset: TttPreset,
    td_ms: f64,
    job: &HistogramJob,
) -> Result<Histogram> {
    let p = GridPoint {
        velocity_kmh,
        preset,
        td_ms,
    };
    let radio = radio.clone().with_l3_filter_index(preset.l3_filter_index());
    let log = trace::run_trace_in(env, &radio, &p.mobility()?, job.min_triggers, job.max_duration, p.seed(job.seed))?;
    trace::extract_offset_histogram(&log, job.bins)
}

/// Runs the trace simulator at every point of `job` and writes one histogram
/// per point to `case_dir(out_dir, case)/histogram_file_name(..)`. Returns
/// the written paths in grid order, or the first failure in that order.
pub fn generate_histograms(job: &HistogramJob, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    if job.cases.is_empty() || job.velocities.is_empty() || job.ttt_presets.is_empty() || job.t_d_values.is_empty() {
        return Err(Error::Config("histogram grids must not be empty".into()));
    }
    job.radio.validate()?;
    let out_dir = out_dir.as_ref();
    let mut written = Vec::new();
    for &case in &job.cases {
        let radio = job.radio.clone().with_case(case);
        let env = Environment::new(&radio, job.seed);
        let dir = case_dir(out_dir, case);
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let spec = SweepSpec {
            velocities: job.velocities.clone(),
            ttt_presets: job.ttt_presets.clone(),
            t_d_values: job.t_d_values.clone(),
            ..SweepSpec::default_grid(Mode::Analytic)
        };
        let results: Vec<Result<PathBuf>> = spec
            .points()
            .into_par_iter()
            .map(|p| {
                let h = trace_histogram(&env, &radio, p.velocity_kmh, p.preset, p.td_ms, job)?;
                let path = dir.join(histogram_file_name(p.preset.ttt_ms(), p.velocity_kmh, p.td_ms));
                h.save(&path)?;
                Ok(path)
            })
            .collect();
        for r in results {
            written.push(r?);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mode: Mode) -> SweepSpec {
        SweepSpec {
            velocities: vec![30.0, 120.0],
            t_d_values: vec![50.0, 200.0],
            trials: 20_000,
            ..SweepSpec::default_grid(mode)
        }
    }

    #[test]
    fn validation() {
        let mut s = small(Mode::Analytic);
        s.velocities.clear();
        assert!(run_sweep(&s).is_err());
        let mut s = small(Mode::MonteCarlo);
        s.trials = 9_999;
        assert!(run_sweep(&s).is_err());
        assert!(run_sweep(&small(Mode::SemiAnalytic)).is_err());
        let mut s = small(Mode::Analytic);
        s.histogram_path = Some("h.json".into());
        assert!(run_sweep(&s).is_err());
    }

    #[test]
    fn missing_histogram_file_is_an_io_error() {
        let mut s = small(Mode::SemiAnalytic);
        s.histogram_path = Some("/nonexistent/h.json".into());
        assert!(matches!(run_sweep(&s), Err(Error::Io { .. })));
    }

    #[test]
    fn analytic_default_grid_rows() {
        let r = run_sweep(&SweepSpec::default_grid(Mode::Analytic)).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.rows.len(), 12 * 4 * 3 * 3);
        assert_eq!(r.to_csv().lines().count(), 12 * 4 * 3 * 3 + 1);
        for row in &r.rows {
            assert!((0.0..=1.0).contains(&row.value));
            if row.ttt_ms == 160.0 && row.metric == Metric::PueHf {
                assert_eq!(row.value, 0.0);
            }
        }
        // canonical order: velocity, then TTT, then T_d
        let keys: Vec<_> = r.rows.iter().map(|r| (r.velocity_kmh, r.ttt_ms, r.td_ms)).collect();
        assert!(keys.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn zero_velocity_has_no_failures() {
        let mut s = small(Mode::Analytic);
        s.velocities = vec![0.0];
        for row in run_sweep(&s).unwrap().rows {
            if row.metric != Metric::Nho {
                assert_eq!(row.value, 0.0);
            }
        }
    }

    #[test]
    fn monte_carlo_matches_analytic() {
        let mut mc = small(Mode::MonteCarlo);
        mc.trials = 200_000;
        let m = run_sweep(&mc).unwrap();
        let a = run_sweep(&small(Mode::Analytic)).unwrap();
        for row in &a.rows {
            let got = m.rows.iter().find(|r| {
                (r.velocity_kmh, r.ttt_ms, r.td_ms, r.metric) == (row.velocity_kmh, row.ttt_ms, row.td_ms, row.metric)
            });
            let got = got.unwrap();
            assert!((got.value - row.value).abs() <= 0.005 + got.ci.unwrap(), "{row:?} vs {got:?}");
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_order_free() {
        let s = small(Mode::MonteCarlo);
        let mut reversed = s.clone();
        reversed.velocities.reverse();
        reversed.t_d_values.reverse();
        assert_eq!(run_sweep(&s).unwrap(), run_sweep(&reversed).unwrap());
    }

    #[test]
    fn export_round_trips() {
        let r = run_sweep(&small(Mode::MonteCarlo)).unwrap();
        let json = r.to_json();
        assert_eq!(SweepResult::from_json(&json).unwrap().to_json(), json);
        let csv = r.to_csv();
        assert_eq!(SweepResult::from_csv(&csv).unwrap().to_csv(), csv);
        assert_eq!(SweepResult::default().to_csv(), "velocity_kmh,ttt_ms,td_ms,metric,value,ci\n");
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig(0.1234567891234), "0.123456789");
        assert_eq!(format_sig(120.0), "120");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333");
    }

    #[test]
    fn semi_analytic_reads_a_directory() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = small(Mode::SemiAnalytic);
        s.velocities = vec![60.0];
        s.ttt_presets = vec![TttPreset::Set1];
        s.t_d_values = vec![200.0];
        let mob = MobilityConfig::from_kmh_ms(60.0, 480.0, 480.0, 200.0).unwrap();
        Histogram::uniform(mob.sampling_distance())
            .unwrap()
            .save(dir.path().join(histogram_file_name(480.0, 60.0, 200.0)))
            .unwrap();
        s.histogram_path = Some(dir.path().to_path_buf());
        let semi = run_sweep(&s).unwrap();
        let mut a = s.clone();
        a.mode = Mode::Analytic;
        a.histogram_path = None;
        let exact = run_sweep(&a).unwrap();
        for (x, y) in semi.rows.iter().zip(&exact.rows) {
            assert!((x.value - y.value).abs() < 1e-6);
        }
        // a point without a file is reported, not fatal
        s.velocities.push(70.0);
        let r = run_sweep(&s).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].velocity_kmh, 70.0);
    }

    #[test]
    fn histogram_generation_is_reproducible() {
        let job = HistogramJob {
            cases: vec![FadingCase::Case1],
            velocities: vec![60.0],
            ttt_presets: vec![TttPreset::Set2],
            t_d_values: vec![200.0],
            min_triggers: 120,
            ..HistogramJob::default()
        };
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let pa = generate_histograms(&job, a.path()).unwrap();
        let pb = generate_histograms(&job, b.path()).unwrap();
        assert_eq!(pa.len(), 1);
        assert!(pa[0].ends_with("case1/ttt160_v60_td200.json"));
        assert_eq!(std::fs::read(&pa[0]).unwrap(), std::fs::read(&pb[0]).unwrap());
    }

    #[test]
    fn short_traces_report_insufficient_data() {
        let job = HistogramJob {
            cases: vec![FadingCase::Case1],
            velocities: vec![60.0],
            ttt_presets: vec![TttPreset::Set2],
            t_d_values: vec![200.0],
            max_duration: 10.0,
            ..HistogramJob::default()
        };
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            generate_histograms(&job, dir.path()),
            Err(Error::InsufficientData { .. })
        ));
    }
}
