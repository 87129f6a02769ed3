//! Radio-level trace of one UE on the bouncing ring.
//!
//! RSRP is sampled every 40 ms from path loss, shadowing and optional
//! Rayleigh fading. The L1/L3 chain is updated and the entry condition
//! checked every `T_d`. A passing check starts the TTT, a failing one resets
//! it, and the handover completes when the TTT expires. While the TTT runs,
//! a wideband SINR below `Q_out` is a handover failure, after which the UE
//! re-establishes on the target cell.

use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::config::RadioConfig;
use super::filter::MeasurementChain;
use super::mobility::{step_bouncing_ring, Cell, Ring, UeState};
use super::shadowing::ShadowingMap;
use crate::error::{Error, Result};
use crate::geometry::MobilityConfig;
use crate::offset::Histogram;

const SAMPLE_MS: u64 = 40;

/// Fewest handover triggers accepted for an offset histogram.
pub const MIN_TRIGGERS: usize = 100;

/// How a TTT run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resolution {
    Handover,
    Failure,
    Reset,
    /// Still running when the trace stopped.
    Pending,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriggerEvent {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub serving_cell: Cell,
    pub heading: f64,
    /// Signed handover offset in metres, for macro-to-pico triggers.
    pub offset: Option<f64>,
    pub resolution: Resolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HfEvent {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub serving_cell: Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum LogLine {
    Trigger(TriggerEvent),
    Failure(HfEvent),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EventLog {
    pub trigger_events: Vec<TriggerEvent>,
    pub hf_events: Vec<HfEvent>,
}

impl EventLog {
    /// One JSON object per line, triggers and failures merged in time order.
    pub fn to_jsonl(&self) -> String {
        let mut lines: Vec<(f64, LogLine)> = self
            .trigger_events
            .iter()
            .map(|e| (e.t, LogLine::Trigger(*e)))
            .chain(self.hf_events.iter().map(|e| (e.t, LogLine::Failure(*e))))
            .collect();
        lines.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out = String::new();
        for (_, line) in lines {
            out.push_str(&serde_json::to_string(&line).expect("events serialise"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> std::result::Result<Self, serde_json::Error> {
        let mut log = Self::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str(line)? {
                LogLine::Trigger(e) => log.trigger_events.push(e),
                LogLine::Failure(e) => log.hf_events.push(e),
            }
        }
        Ok(log)
    }

    pub fn save_jsonl(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(self.to_jsonl().as_bytes())
            .map_err(|e| Error::io(path, e))
    }

    /// Macro-to-pico triggers whose TTT ran to a handover or a failure.
    pub fn completed_inbound(&self) -> impl Iterator<Item = &TriggerEvent> {
        self.trigger_events.iter().filter(|e| {
            e.serving_cell == Cell::Macro
                && matches!(e.resolution, Resolution::Handover | Resolution::Failure)
        })
    }

    /// Offsets of [`Self::completed_inbound`] triggers.
    pub fn handover_offsets(&self) -> Vec<f64> {
        self.completed_inbound().filter_map(|e| e.offset).collect()
    }
}

/// Bins the handover offsets of `log`.
pub fn extract_offset_histogram(log: &EventLog, bins: usize) -> Result<Histogram> {
    let offsets = log.handover_offsets();
    if offsets.len() < MIN_TRIGGERS {
        return Err(Error::InsufficientData {
            found: offsets.len(),
            required: MIN_TRIGGERS,
        });
    }
    Histogram::from_samples(&offsets, bins)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn sampling_period_ms(mob: &MobilityConfig) -> Result<u64> {
    let ms = mob.sampling_period() * 1000.0;
    let rounded = ms.round();
    if (ms - rounded).abs() > 1e-6 || rounded < SAMPLE_MS as f64 {
        return Err(Error::Config(format!(
            "the L3 sampling period must be a whole number of ms and at least {SAMPLE_MS} ms, got {ms} ms"
        )));
    }
    Ok(rounded as u64)
}

/// Average delay, in seconds, between a noise-free crossing of the entry
/// threshold and the filtered measurement catching up with it. Covers the
/// L1 window centre, how stale the newest RSRP sample is at a check, and
/// the steady-state lag of the L3 recursion on a ramp.
pub fn filter_lag(radio: &RadioConfig, mob: &MobilityConfig) -> Result<f64> {
    let td = sampling_period_ms(mob)?;
    let l1 = (radio.l1_window as f64 - 1.0) / 2.0 * SAMPLE_MS as f64;
    let cycle = SAMPLE_MS / gcd(SAMPLE_MS, td);
    let stale = (0..cycle).map(|k| (k * td % SAMPLE_MS) as f64).sum::<f64>() / cycle as f64;
    let a = radio.l3_coefficient();
    let l3 = td as f64 * (1.0 - a) / a;
    Ok((l1 + stale + l3) / 1000.0)
}

struct Radio<'a> {
    cfg: &'a RadioConfig,
    shadow_macro: &'a ShadowingMap,
    shadow_pico: &'a ShadowingMap,
}

impl Radio<'_> {
    fn median(&self, cell: Cell, p: (f64, f64)) -> f64 {
        let c = self.cfg;
        let (pos, tx, intercept, slope) = match cell {
            Cell::Macro => ((c.macro_x, c.macro_y), c.macro_tx_power, c.pathloss_macro_intercept, c.pathloss_macro_slope),
            Cell::Pico => ((c.pico_x, c.pico_y), c.pico_tx_power, c.pathloss_pico_intercept, c.pathloss_pico_slope),
        };
        let d = (p.0 - pos.0).hypot(p.1 - pos.1).max(1.0);
        tx - intercept - slope * (d / 1000.0).log10()
    }

    fn shadowed(&self, cell: Cell, p: (f64, f64)) -> f64 {
        let map = match cell {
            Cell::Macro => self.shadow_macro,
            Cell::Pico => self.shadow_pico,
        };
        self.median(cell, p) + map.at(p.0, p.1)
    }

    /// Noise-free margin of the macro-to-pico entry condition; zero on the
    /// ideal coverage edge, positive inside.
    fn inbound_margin(&self, p: (f64, f64)) -> f64 {
        self.median(Cell::Pico, p) - self.median(Cell::Macro, p) - self.cfg.hysteresis
    }

    fn sinr(&self, serving: Cell, p: (f64, f64)) -> f64 {
        let s = 10f64.powf(self.shadowed(serving, p) / 10.0);
        let i = 10f64.powf(self.shadowed(serving.other(), p) / 10.0);
        let n = 10f64.powf(self.cfg.noise_power / 10.0);
        10.0 * (s / (i + n)).log10()
    }

    /// Distance from `p` along `heading` to the first point with a
    /// non-negative margin, searched over `max_distance`.
    fn distance_ahead(&self, p: (f64, f64), heading: f64, max_distance: f64) -> Option<f64> {
        let (ux, uy) = (heading.cos(), heading.sin());
        let at = |s: f64| self.inbound_margin((p.0 + s * ux, p.1 + s * uy));
        let mut s = 0.0;
        while s < max_distance {
            let next = s + 1.0;
            if at(next) >= 0.0 {
                return Some(bisect(at, s, next));
            }
            s = next;
        }
        None
    }

    /// Signed distance from `p` to the coverage edge measured along the ray
    /// from the pico, positive inside.
    fn radial_depth(&self, p: (f64, f64)) -> f64 {
        let centre = (self.cfg.pico_x, self.cfg.pico_y);
        let r = (p.0 - centre.0).hypot(p.1 - centre.1);
        if r == 0.0 {
            return 0.0;
        }
        let (ux, uy) = ((p.0 - centre.0) / r, (p.1 - centre.1) / r);
        let at = |s: f64| self.inbound_margin((centre.0 + s * ux, centre.1 + s * uy));
        let mut hi = r.max(1.0);
        while at(hi) >= 0.0 && hi < 1e5 {
            hi *= 2.0;
        }
        let edge = bisect(at, 0.0, hi);
        edge - r
    }
}

/// Root of a function that is non-negative at `hi` and negative at `lo`
/// (or the reverse), by bisection.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = f(lo) >= 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

struct RunningTtt {
    started_ms: u64,
    event: usize,
}

/// Shadowing realisations for one seed, generated on first use. Traces
/// walk `drop_legs` ring legs in each realisation before moving to the next,
/// cycling after `shadowing_drops`. Sharing one environment between traces
/// with different mobility keeps their comparison on the same fields.
#[derive(Debug)]
pub struct Environment {
    cfg: RadioConfig,
    seed: u64,
    drops: Vec<OnceLock<(ShadowingMap, ShadowingMap)>>,
}

impl Environment {
    pub fn new(radio: &RadioConfig, seed: u64) -> Self {
        let n = if radio.shadowing_enabled() { radio.shadowing_drops } else { 1 };
        Self {
            cfg: radio.clone(),
            seed,
            drops: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Whether traces under `radio` can use these fields.
    pub fn fits(&self, radio: &RadioConfig) -> bool {
        let a = &self.cfg;
        a.pico_x == radio.pico_x
            && a.pico_y == radio.pico_y
            && a.ring_radius == radio.ring_radius
            && a.shadowing_sigma_macro == radio.shadowing_sigma_macro
            && a.shadowing_sigma_pico == radio.shadowing_sigma_pico
            && a.shadowing_decorrelation == radio.shadowing_decorrelation
            && a.shadowing_resolution == radio.shadowing_resolution
            && a.shadowing_sinusoids == radio.shadowing_sinusoids
            && a.shadowing_drops == radio.shadowing_drops
    }

    fn maps(&self, drop: usize) -> &(ShadowingMap, ShadowingMap) {
        let i = drop % self.drops.len();
        self.drops[i].get_or_init(|| {
            let cfg = &self.cfg;
            let mut rng = stream(self.seed, SHADOW_STREAM + i as u64);
            let centre = (cfg.pico_x, cfg.pico_y);
            let half_width = cfg.ring_radius + 2.0 * cfg.shadowing_resolution;
            let mut map = |sigma: f64| {
                ShadowingMap::generate(
                    sigma,
                    cfg.shadowing_decorrelation,
                    centre,
                    half_width,
                    cfg.shadowing_resolution,
                    cfg.shadowing_sinusoids,
                    &mut rng,
                )
            };
            let m = map(cfg.shadowing_sigma_macro);
            (m, map(cfg.shadowing_sigma_pico))
        })
    }
}

/// Runs the trace for `duration` seconds.
pub fn run_trace(radio: &RadioConfig, mob: &MobilityConfig, duration: f64, seed: u64) -> Result<EventLog> {
    simulate(&Environment::new(radio, seed), radio, mob, duration, usize::MAX, seed)
}

/// Runs the trace until `min_triggers` inbound handover triggers have
/// completed or `max_duration` seconds have passed.
pub fn run_trace_until(
    radio: &RadioConfig,
    mob: &MobilityConfig,
    min_triggers: usize,
    max_duration: f64,
    seed: u64,
) -> Result<EventLog> {
    simulate(&Environment::new(radio, seed), radio, mob, max_duration, min_triggers, seed)
}

/// [`run_trace_until`] on a prebuilt environment. `seed` drives motion and
/// fading only.
pub fn run_trace_in(
    env: &Environment,
    radio: &RadioConfig,
    mob: &MobilityConfig,
    min_triggers: usize,
    max_duration: f64,
    seed: u64,
) -> Result<EventLog> {
    if !env.fits(radio) {
        return Err(Error::Config(
            "the shadowing environment was built for different radio settings".into(),
        ));
    }
    simulate(env, radio, mob, max_duration, min_triggers, seed)
}

const MOTION_STREAM: u64 = 1;
const FADING_STREAM: u64 = 2;
const SHADOW_STREAM: u64 = 1 << 32;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn simulate(
    env: &Environment,
    cfg: &RadioConfig,
    mob: &MobilityConfig,
    duration: f64,
    min_triggers: usize,
    seed: u64,
) -> Result<EventLog> {
    cfg.validate()?;
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::Config(format!("trace duration must be finite and non-negative, got {duration}")));
    }
    let td_ms = sampling_period_ms(mob)?;
    let tick_ms = gcd(SAMPLE_MS, td_ms);
    let dt = tick_ms as f64 / 1000.0;
    let ttt_ms = |serving: Cell| match serving {
        Cell::Macro => mob.ttt_macro() * 1000.0,
        Cell::Pico => mob.ttt_pico() * 1000.0,
    };
    let speed = mob.speed();
    let shift = speed * filter_lag(cfg, mob)?;
    let a = cfg.l3_coefficient();

    let ring = Ring {
        centre: (cfg.pico_x, cfg.pico_y),
        radius: cfg.ring_radius,
    };
    let mut motion_rng = stream(seed, MOTION_STREAM);
    let mut fading_rng = stream(seed, FADING_STREAM);

    let mut log = EventLog::default();
    let mut completed = 0usize;
    let n_ticks = (duration * 1000.0 / tick_ms as f64).floor() as u64;
    let mut tick = 0u64;
    let mut drop = 0usize;

    'drops: loop {
        let (shadow_macro, shadow_pico) = env.maps(drop);
        let radio = Radio {
            cfg,
            shadow_macro,
            shadow_pico,
        };
        let (start, heading) = ring.random_start(&mut motion_rng);
        let mut ue = UeState::new(start, heading, Cell::Macro);
        if radio.sinr(Cell::Pico, start) > radio.sinr(Cell::Macro, start) {
            ue.serving_cell = Cell::Pico;
        }
        let mut chain_macro = MeasurementChain::new(cfg.l1_window, a);
        let mut chain_pico = MeasurementChain::new(cfg.l1_window, a);
        let mut ttt: Option<RunningTtt> = None;
        let mut path = 0.0;
        let mut margin = radio.inbound_margin(ue.position);
        let mut last_entry: Option<f64> = None;
        let mut legs = 0usize;

        while legs < cfg.drop_legs {
            tick += 1;
            if tick > n_ticks {
                break 'drops;
            }
            let t_ms = tick * tick_ms;
            let t = t_ms as f64 / 1000.0;
            let before = ue.position;
            let (next, bounced) = step_bouncing_ring(ue, speed, dt, &ring, &mut motion_rng);
            ue = next;
            legs += bounced as usize;
            let step = speed * dt;
            path += step;

            let new_margin = radio.inbound_margin(ue.position);
            if margin < 0.0 && new_margin >= 0.0 {
                let entry = if bounced || step == 0.0 {
                    path
                } else {
                    let (dx, dy) = (ue.position.0 - before.0, ue.position.1 - before.1);
                    let frac = bisect(|f| radio.inbound_margin((before.0 + f * dx, before.1 + f * dy)), 0.0, 1.0);
                    path - step + frac * step
                };
                last_entry = Some(entry);
            }
            margin = new_margin;

            if t_ms % SAMPLE_MS == 0 {
                let mut sample = |cell: Cell| {
                    let fade: f64 = if cfg.fast_fading_enabled { fading_rng.sample(Exp1) } else { 1.0 };
                    10f64.powf(radio.shadowed(cell, ue.position) / 10.0) * fade
                };
                let pm = sample(Cell::Macro);
                let pp = sample(Cell::Pico);
                chain_macro.push(pm);
                chain_pico.push(pp);

                if let Some(run) = &ttt {
                    if radio.sinr(ue.serving_cell, ue.position) < cfg.qout_sinr {
                        log.trigger_events[run.event].resolution = Resolution::Failure;
                        if ue.serving_cell == Cell::Macro {
                            completed += 1;
                        }
                        log.hf_events.push(HfEvent {
                            t,
                            x: ue.position.0,
                            y: ue.position.1,
                            serving_cell: ue.serving_cell,
                        });
                        ue.serving_cell = ue.serving_cell.other();
                        ttt = None;
                    }
                }
            }

            if t_ms % td_ms == 0 {
                ue.l3_macro = chain_macro.update();
                ue.l3_pico = chain_pico.update();
                if let (Some(fm), Some(fp)) = (ue.l3_macro, ue.l3_pico) {
                    let (serving, target) = match ue.serving_cell {
                        Cell::Macro => (fm, fp),
                        Cell::Pico => (fp, fm),
                    };
                    let entered = target > serving + cfg.hysteresis;
                    match (&ttt, entered) {
                        (Some(run), false) => {
                            log.trigger_events[run.event].resolution = Resolution::Reset;
                            ttt = None;
                        }
                        (None, true) => {
                            let offset = (ue.serving_cell == Cell::Macro).then(|| {
                                let raw = if margin >= 0.0 {
                                    last_entry.map_or_else(|| radio.radial_depth(ue.position), |e| path - e)
                                } else {
                                    radio
                                        .distance_ahead(ue.position, ue.heading, 2.0 * cfg.ring_radius)
                                        .map_or_else(|| radio.radial_depth(ue.position), |d| -d)
                                };
                                raw - shift
                            });
                            log.trigger_events.push(TriggerEvent {
                                t,
                                x: ue.position.0,
                                y: ue.position.1,
                                serving_cell: ue.serving_cell,
                                heading: ue.heading,
                                offset,
                                resolution: Resolution::Pending,
                            });
                            ttt = Some(RunningTtt {
                                started_ms: t_ms,
                                event: log.trigger_events.len() - 1,
                            });
                        }
                        _ => {}
                    }
                }
            }

            if let Some(run) = &ttt {
                ue.ttt_elapsed = Some((t_ms - run.started_ms) as f64 / 1000.0);
                if (t_ms - run.started_ms) as f64 >= ttt_ms(ue.serving_cell) {
                    log.trigger_events[run.event].resolution = Resolution::Handover;
                    if ue.serving_cell == Cell::Macro {
                        completed += 1;
                    }
                    ue.serving_cell = ue.serving_cell.other();
                    ttt = None;
                }
            }
            if ttt.is_none() {
                ue.ttt_elapsed = None;
            }
            if completed >= min_triggers {
                break 'drops;
            }
        }
        drop += 1;
    }
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::config::FadingCase;

    fn mob(kmh: f64, ttt_ms: f64, td_ms: f64) -> MobilityConfig {
        MobilityConfig::from_kmh_ms(kmh, ttt_ms, ttt_ms, td_ms).unwrap()
    }

    #[test]
    fn rejects_inconsistent_periods() {
        let r = RadioConfig::default();
        assert!(run_trace(&r, &mob(60.0, 480.0, 20.0), 10.0, 0).is_err());
        assert!(run_trace(&r, &mob(60.0, 480.0, 50.5), 10.0, 0).is_err());
        assert!(run_trace(&r, &mob(60.0, 480.0, 50.0), 10.0, 0).is_ok());
    }

    #[test]
    fn lag_components() {
        let r = RadioConfig::default().with_l3_filter_index(4);
        assert!((filter_lag(&r, &mob(60.0, 480.0, 200.0)).unwrap() - 0.28).abs() < 1e-12);
        let r = r.with_l3_filter_index(0);
        // checks at 50 ms see samples 10, 20, 30 and 0 ms old
        assert!((filter_lag(&r, &mob(60.0, 480.0, 50.0)).unwrap() - 0.095).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let r = RadioConfig::default().with_case(FadingCase::Case3);
        let m = mob(120.0, 160.0, 40.0);
        let a = run_trace(&r, &m, 300.0, 5).unwrap();
        let b = run_trace(&r, &m, 300.0, 5).unwrap();
        assert_eq!(a, b);
        assert!(!a.trigger_events.is_empty());
    }

    #[test]
    fn event_times_increase() {
        let r = RadioConfig::default().with_case(FadingCase::Case3);
        let log = run_trace(&r, &mob(60.0, 160.0, 40.0), 2000.0, 1).unwrap();
        for w in log.trigger_events.windows(2) {
            assert!(w[0].t < w[1].t);
        }
        for w in log.hf_events.windows(2) {
            assert!(w[0].t < w[1].t);
        }
    }

    #[test]
    fn noise_free_triggers_sit_just_inside_the_edge() {
        // symmetric towers, no impairments: the edge is the bisector
        let mut r = RadioConfig::default().with_case(FadingCase::Case1).with_l3_filter_index(0);
        r.macro_tx_power = r.pico_tx_power;
        r.pathloss_macro_intercept = r.pathloss_pico_intercept;
        r.pathloss_macro_slope = r.pathloss_pico_slope;
        r.macro_x = r.pico_x - 300.0;
        r.hysteresis = 0.0;
        let m = mob(60.0, 480.0, 200.0);
        let log = run_trace_until(&r, &m, 200, 1e6, 3).unwrap();
        let w = m.sampling_distance();
        let slack = m.speed() * 0.04;
        for e in log.completed_inbound() {
            let o = e.offset.unwrap();
            assert!(o > -slack && o < w + slack, "offset {o}");
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let r = RadioConfig::default().with_case(FadingCase::Case3);
        let log = run_trace(&r, &mob(120.0, 80.0, 40.0), 600.0, 2).unwrap();
        assert!(!log.hf_events.is_empty() || !log.trigger_events.is_empty());
        let back = EventLog::from_jsonl(&log.to_jsonl()).unwrap();
        assert_eq!(back, log);
    }

    #[test]
    fn environment_must_match_the_radio() {
        let r = RadioConfig::default().with_case(FadingCase::Case2);
        let env = Environment::new(&r, 4);
        let m = mob(60.0, 160.0, 40.0);
        assert!(run_trace_in(&env, &r.clone().with_l3_filter_index(1), &m, 5, 100.0, 1).is_ok());
        let mut other = r.clone();
        other.shadowing_sigma_pico = 6.0;
        assert!(run_trace_in(&env, &other, &m, 5, 100.0, 1).is_err());
    }

    #[test]
    fn shared_environment_matches_fresh_one() {
        let r = RadioConfig::default().with_case(FadingCase::Case3);
        let m = mob(90.0, 80.0, 40.0);
        let env = Environment::new(&r, 6);
        let shared = run_trace_in(&env, &r, &m, usize::MAX, 400.0, 6).unwrap();
        assert_eq!(shared, run_trace(&r, &m, 400.0, 6).unwrap());
    }

    #[test]
    fn histogram_needs_enough_triggers() {
        let log = EventLog::default();
        assert!(matches!(
            extract_offset_histogram(&log, 10),
            Err(Error::InsufficientData { found: 0, .. })
        ));
    }

    #[test]
    fn triggers_on_the_edge_give_one_bin_at_zero() {
        let e = TriggerEvent {
            t: 0.0,
            x: 0.0,
            y: 0.0,
            serving_cell: Cell::Macro,
            heading: 0.0,
            offset: Some(0.0),
            resolution: Resolution::Handover,
        };
        let log = EventLog {
            trigger_events: (0..150).map(|i| TriggerEvent { t: i as f64, ..e }).collect(),
            hf_events: vec![],
        };
        let h = extract_offset_histogram(&log, 10).unwrap();
        assert_eq!(h.bins(), 1);
        assert!(h.support().0 < 0.0 && h.support().1 > 0.0);
        assert!((h.mean()).abs() < 1e-9);
    }

    #[test]
    fn uniform_synthetic_offsets_give_flat_histogram() {
        let w = 3.0;
        let log = EventLog {
            trigger_events: (0..10_000)
                .map(|i| TriggerEvent {
                    t: i as f64,
                    x: 0.0,
                    y: 0.0,
                    serving_cell: Cell::Macro,
                    heading: 0.0,
                    offset: Some(w * (i as f64 + 0.5) / 10_000.0),
                    resolution: Resolution::Handover,
                })
                .collect(),
            hf_events: vec![],
        };
        let h = extract_offset_histogram(&log, 10).unwrap();
        for d in h.density() {
            assert!((d * w - 1.0).abs() < 0.01);
        }
    }
}
