//! Trial-level simulation of chord crossings.
//!
//! Each trial draws an entry angle and handover offsets, walks the chord and
//! records a single outcome. Trials are split into fixed-size chunks, each
//! with its own ChaCha stream, so results do not depend on the number of
//! worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::ProbabilityKind;
use crate::error::{Error, Result};
use crate::geometry::{dist_to_mue_hf, dist_to_pue_hf, CellGeometry, MobilityConfig};
use crate::offset::OffsetDistribution;

pub const MIN_TRIALS: u64 = 10_000;
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeKind {
    NoHandover,
    MueHandoverFailure,
    HandoverSuccess,
    PueHandoverFailure,
    PingPong,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub kind: OutcomeKind,
    pub theta: f64,
    pub offset_in: f64,
    /// Only drawn once the inbound handover has succeeded.
    pub offset_out: Option<f64>,
    /// Time in the pico cell, for trials that reach the outbound handover.
    pub time_of_stay: Option<f64>,
}

/// How the outbound offset relates to the inbound one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum OffsetCoupling {
    /// The inbound offset is reused on the way out.
    Shared,
    /// A fresh offset is drawn from the outbound distribution.
    #[default]
    Independent,
}

/// Denominator used for the PUE-HF rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PueNormalisation {
    /// Over all trials.
    #[default]
    AllTrials,
    /// Over trials whose inbound handover succeeded.
    InboundSuccess,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSpec {
    pub geometry: CellGeometry,
    pub mobility: MobilityConfig,
    pub offset_in: OffsetDistribution,
    pub offset_out: OffsetDistribution,
    /// Seconds.
    pub ping_pong_threshold: f64,
    pub coupling: OffsetCoupling,
    pub pue_normalisation: PueNormalisation,
}

impl TrialSpec {
    /// Uniform offsets on `[0, υT_d)` for both legs, 1 s ping-pong threshold.
    pub fn uniform(geometry: CellGeometry, mobility: MobilityConfig) -> Result<Self> {
        let offsets = OffsetDistribution::uniform(mobility.sampling_distance())?;
        Ok(Self {
            geometry,
            mobility,
            offset_in: offsets.clone(),
            offset_out: offsets,
            ping_pong_threshold: 1.0,
            coupling: OffsetCoupling::default(),
            pue_normalisation: PueNormalisation::default(),
        })
    }

    pub fn with_offsets(mut self, offsets: OffsetDistribution) -> Self {
        self.offset_in = offsets.clone();
        self.offset_out = offsets;
        self
    }

    pub fn with_coupling(mut self, coupling: OffsetCoupling) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_ping_pong_threshold(mut self, seconds: f64) -> Self {
        self.ping_pong_threshold = seconds;
        self
    }

    pub fn with_pue_normalisation(mut self, norm: PueNormalisation) -> Self {
        self.pue_normalisation = norm;
        self
    }
}

pub fn run_trial<R: Rng + ?Sized>(spec: &TrialSpec, rng: &mut R) -> TrialOutcome {
    let geom = &spec.geometry;
    let mob = &spec.mobility;
    let theta = PI * (rng.random::<f64>() - 0.5);
    let offset_in = spec.offset_in.sample(rng);
    let chord = geom.chord_length(theta);
    let travel_in = mob.macro_ttt_distance() + offset_in;
    let outcome = |kind, offset_out, time_of_stay| TrialOutcome {
        kind,
        theta,
        offset_in,
        offset_out,
        time_of_stay,
    };

    if matches!(dist_to_mue_hf(geom, theta), Some(d) if travel_in >= d) {
        return outcome(OutcomeKind::MueHandoverFailure, None, None);
    }
    if travel_in >= chord {
        return outcome(OutcomeKind::NoHandover, None, None);
    }

    let offset_out = match spec.coupling {
        OffsetCoupling::Shared => offset_in,
        OffsetCoupling::Independent => spec.offset_out.sample(rng),
    };
    let travel_out = mob.pico_ttt_distance() + offset_out;
    if travel_out >= dist_to_pue_hf(geom, theta) {
        return outcome(OutcomeKind::PueHandoverFailure, Some(offset_out), None);
    }
    let path = chord - travel_in + travel_out;
    let stay = if mob.speed() > 0.0 { path / mob.speed() } else { f64::INFINITY };
    let kind = if stay < spec.ping_pong_threshold {
        OutcomeKind::PingPong
    } else {
        OutcomeKind::HandoverSuccess
    };
    outcome(kind, Some(offset_out), Some(stay))
}

/// Per-kind trial counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub no_handover: u64,
    pub mue_hf: u64,
    pub success: u64,
    pub pue_hf: u64,
    pub ping_pong: u64,
}

impl OutcomeCounts {
    pub fn record(&mut self, kind: OutcomeKind) {
        match kind {
            OutcomeKind::NoHandover => self.no_handover += 1,
            OutcomeKind::MueHandoverFailure => self.mue_hf += 1,
            OutcomeKind::HandoverSuccess => self.success += 1,
            OutcomeKind::PueHandoverFailure => self.pue_hf += 1,
            OutcomeKind::PingPong => self.ping_pong += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.no_handover + self.mue_hf + self.success + self.pue_hf + self.ping_pong
    }

    /// Trials whose inbound handover completed.
    pub fn inbound_success(&self) -> u64 {
        self.success + self.pue_hf + self.ping_pong
    }

    fn merge(self, other: Self) -> Self {
        Self {
            no_handover: self.no_handover + other.no_handover,
            mue_hf: self.mue_hf + other.mue_hf,
            success: self.success + other.success,
            pue_hf: self.pue_hf + other.pue_hf,
            ping_pong: self.ping_pong + other.ping_pong,
        }
    }

    pub fn estimate(&self, kind: ProbabilityKind, norm: PueNormalisation) -> EstimateWithCI {
        match kind {
            ProbabilityKind::Nho => EstimateWithCI::from_counts(self.no_handover, self.total()),
            ProbabilityKind::MueHf => EstimateWithCI::from_counts(self.mue_hf, self.total()),
            ProbabilityKind::PueHf => match norm {
                PueNormalisation::AllTrials => EstimateWithCI::from_counts(self.pue_hf, self.total()),
                PueNormalisation::InboundSuccess => {
                    EstimateWithCI::from_counts(self.pue_hf, self.inbound_success())
                }
            },
        }
    }

    pub fn ping_pong(&self) -> EstimateWithCI {
        EstimateWithCI::from_counts(self.ping_pong, self.total())
    }
}

/// Binomial estimate with a normal-approximation 95 % half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub p_hat: f64,
    pub n_trials: u64,
    pub half_width_95: f64,
}

impl EstimateWithCI {
    pub fn from_counts(hits: u64, n: u64) -> Self {
        if n == 0 {
            return Self {
                p_hat: 0.0,
                n_trials: 0,
                half_width_95: 0.0,
            };
        }
        let p = hits as f64 / n as f64;
        Self {
            p_hat: p,
            n_trials: n,
            half_width_95: 1.96 * (p * (1.0 - p) / n as f64).sqrt(),
        }
    }

    /// Standard error `√(p(1−p)/n)`.
    pub fn std_error(&self) -> f64 {
        self.half_width_95 / 1.96
    }
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn check_trials(n_trials: u64) -> Result<()> {
    if n_trials < MIN_TRIALS {
        return Err(Error::Config(format!(
            "at least {MIN_TRIALS} trials are required, got {n_trials}"
        )));
    }
    Ok(())
}

/// Runs `n_trials` trials in parallel and tallies outcomes.
pub fn simulate(spec: &TrialSpec, n_trials: u64, seed: u64) -> Result<OutcomeCounts> {
    check_trials(n_trials)?;
    let chunks = n_trials.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let n = CHUNK.min(n_trials - c * CHUNK);
            let mut counts = OutcomeCounts::default();
            for _ in 0..n {
                counts.record(run_trial(spec, &mut rng).kind);
            }
            counts
        })
        .reduce(OutcomeCounts::default, OutcomeCounts::merge))
}

/// The first `n` trial outcomes of the stream that [`simulate`] tallies.
pub fn trial_outcomes(spec: &TrialSpec, n: u64, seed: u64) -> Vec<TrialOutcome> {
    let mut out = Vec::with_capacity(n as usize);
    let mut chunk = 0;
    while (out.len() as u64) < n {
        let mut rng = chunk_rng(seed, chunk);
        let take = CHUNK.min(n - out.len() as u64);
        out.extend((0..take).map(|_| run_trial(spec, &mut rng)));
        chunk += 1;
    }
    out
}

pub fn estimate(kind: ProbabilityKind, spec: &TrialSpec, n_trials: u64, seed: u64) -> Result<EstimateWithCI> {
    Ok(simulate(spec, n_trials, seed)?.estimate(kind, spec.pue_normalisation))
}

pub fn ping_pong_probability(spec: &TrialSpec, n_trials: u64, seed: u64) -> Result<EstimateWithCI> {
    Ok(simulate(spec, n_trials, seed)?.ping_pong())
}
