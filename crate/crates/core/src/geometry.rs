//! Concentric-circle picocell model.
//!
//! The picocell coverage area is a circle of radius `R`. A macro UE that is
//! still attached to the macrocell when it reaches the inner circle `r_m`
//! suffers a handover failure; a pico UE still attached to the picocell when
//! it reaches the outer circle `r_p` fails on the way out. UEs cross the
//! coverage circle on straight chords parameterised by the angle `θ` between
//! the trajectory and the diameter through the entry point, so a chord has
//! length `2R cos θ` and passes `R |sin θ|` from the centre.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radii of the three concentric circles, in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellGeometry {
    coverage_radius: f64,
    mue_hf_radius: f64,
    pue_hf_radius: f64,
}

impl CellGeometry {
    pub fn new(coverage_radius: f64, mue_hf_radius: f64, pue_hf_radius: f64) -> Result<Self> {
        let radii = [coverage_radius, mue_hf_radius, pue_hf_radius];
        if radii.iter().any(|r| !r.is_finite() || *r <= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "radii must be finite and positive, got R={coverage_radius}, r_m={mue_hf_radius}, r_p={pue_hf_radius}"
            )));
        }
        if !(mue_hf_radius < coverage_radius && coverage_radius < pue_hf_radius) {
            return Err(Error::InvalidGeometry(format!(
                "need r_m < R < r_p, got R={coverage_radius}, r_m={mue_hf_radius}, r_p={pue_hf_radius}"
            )));
        }
        Ok(Self {
            coverage_radius,
            mue_hf_radius,
            pue_hf_radius,
        })
    }

    /// Picocell coverage `R`.
    pub fn coverage_radius(&self) -> f64 {
        self.coverage_radius
    }

    /// Inner (macro-to-pico) failure radius `r_m`.
    pub fn mue_hf_radius(&self) -> f64 {
        self.mue_hf_radius
    }

    /// Outer (pico-to-macro) failure radius `r_p`.
    pub fn pue_hf_radius(&self) -> f64 {
        self.pue_hf_radius
    }

    /// Half the shortest chord of the coverage circle that touches the MUE-HF
    /// circle, `√(R² − r_m²)`.
    pub fn half_tangent_chord(&self) -> f64 {
        (self.coverage_radius.powi(2) - self.mue_hf_radius.powi(2)).sqrt()
    }

    /// Shortest chord that touches the MUE-HF circle, `2√(R² − r_m²)`.
    pub fn tangent_chord(&self) -> f64 {
        2.0 * self.half_tangent_chord()
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.coverage_radius
    }

    /// Chord length `l(θ) = 2R cos θ`.
    pub fn chord_length(&self, theta: f64) -> f64 {
        chord_from_angle(self.coverage_radius, theta)
    }

    /// Probability that a Model-1 chord is no longer than `length`.
    pub fn chord_cdf(&self, length: f64) -> f64 {
        endpoint_angle_cdf(length, self.coverage_radius)
    }
}

impl Default for CellGeometry {
    fn default() -> Self {
        Self {
            coverage_radius: 64.0,
            mue_hf_radius: 50.0,
            pue_hf_radius: 78.0,
        }
    }
}

/// UE speed (m/s) and the three timers (s) that govern a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobilityConfig {
    speed: f64,
    ttt_macro: f64,
    ttt_pico: f64,
    sampling_period: f64,
}

impl MobilityConfig {
    pub fn new(speed: f64, ttt_macro: f64, ttt_pico: f64, sampling_period: f64) -> Result<Self> {
        if !speed.is_finite() || speed < 0.0 {
            return Err(Error::InvalidMobility(format!(
                "speed must be finite and non-negative, got {speed}"
            )));
        }
        for (name, value) in [
            ("T_m", ttt_macro),
            ("T_p", ttt_pico),
            ("T_d", sampling_period),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidMobility(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        Ok(Self {
            speed,
            ttt_macro,
            ttt_pico,
            sampling_period,
        })
    }

    /// Same as [`MobilityConfig::new`] with speed in km/h and timers in ms.
    pub fn from_kmh_ms(speed_kmh: f64, ttt_macro_ms: f64, ttt_pico_ms: f64, td_ms: f64) -> Result<Self> {
        Self::new(
            kmh_to_ms(speed_kmh),
            ttt_macro_ms / 1e3,
            ttt_pico_ms / 1e3,
            td_ms / 1e3,
        )
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn ttt_macro(&self) -> f64 {
        self.ttt_macro
    }

    pub fn ttt_pico(&self) -> f64 {
        self.ttt_pico
    }

    pub fn sampling_period(&self) -> f64 {
        self.sampling_period
    }

    /// Distance covered during the macro TTT, `υT_m`.
    pub fn macro_ttt_distance(&self) -> f64 {
        self.speed * self.ttt_macro
    }

    /// Distance covered during the pico TTT, `υT_p`.
    pub fn pico_ttt_distance(&self) -> f64 {
        self.speed * self.ttt_pico
    }

    /// Distance covered in one L3 sampling period, `υT_d`.
    pub fn sampling_distance(&self) -> f64 {
        self.speed * self.sampling_period
    }

    pub fn with_speed(self, speed: f64) -> Result<Self> {
        Self::new(speed, self.ttt_macro, self.ttt_pico, self.sampling_period)
    }
}

pub fn kmh_to_ms(kmh: f64) -> f64 {
    kmh / 3.6
}

pub fn ms_to_kmh(ms: f64) -> f64 {
    ms * 3.6
}

/// The three classic notions of a uniformly random chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordModel {
    /// One endpoint fixed, angle to the diameter uniform on `[-π/2, π/2]`.
    EndpointAngle,
    /// Distance from the centre to the chord uniform on `[0, R]`.
    PerpendicularFoot,
    /// Chord midpoint uniform over the disc.
    Midpoint,
}

impl ChordModel {
    pub const ALL: [ChordModel; 3] = [
        ChordModel::EndpointAngle,
        ChordModel::PerpendicularFoot,
        ChordModel::Midpoint,
    ];

    /// Cumulative distribution of the chord length.
    pub fn cdf(self, length: f64, radius: f64) -> f64 {
        let x = (length / (2.0 * radius)).clamp(0.0, 1.0);
        match self {
            ChordModel::EndpointAngle => 2.0 / PI * x.asin(),
            ChordModel::PerpendicularFoot => 1.0 - (1.0 - x * x).sqrt(),
            ChordModel::Midpoint => x * x,
        }
    }
}

fn check_chord_domain(length: f64, radius: f64) -> Result<()> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if !(0.0..=2.0 * radius).contains(&length) {
        return Err(Error::Domain(format!(
            "chord length {length} outside [0, {}]",
            2.0 * radius
        )));
    }
    Ok(())
}

/// Chord-length density for the given model. Models 1 and 2 have an
/// integrable singularity at `l = 2R`, reported as `f64::INFINITY`.
pub fn chord_pdf(model: ChordModel, length: f64, radius: f64) -> Result<f64> {
    check_chord_domain(length, radius)?;
    let radicand = 4.0 * radius * radius - length * length;
    let density = match model {
        ChordModel::Midpoint => length / (2.0 * radius * radius),
        _ if radicand <= 0.0 => f64::INFINITY,
        ChordModel::EndpointAngle => 2.0 / (PI * radicand.sqrt()),
        ChordModel::PerpendicularFoot => length / (2.0 * radius * radicand.sqrt()),
    };
    Ok(density)
}

/// Draws a chord length from the given model.
pub fn sample_chord<R: Rng + ?Sized>(model: ChordModel, radius: f64, rng: &mut R) -> f64 {
    match model {
        ChordModel::EndpointAngle => {
            let theta = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
            chord_from_angle(radius, theta)
        }
        ChordModel::PerpendicularFoot => {
            let r = rng.random_range(0.0..=radius);
            2.0 * (radius * radius - r * r).max(0.0).sqrt()
        }
        ChordModel::Midpoint => {
            let rho = radius * rng.random::<f64>().sqrt();
            2.0 * (radius * radius - rho * rho).max(0.0).sqrt()
        }
    }
}

pub fn chord_from_angle(radius: f64, theta: f64) -> f64 {
    2.0 * radius * theta.cos().max(0.0)
}

fn endpoint_angle_cdf(length: f64, radius: f64) -> f64 {
    ChordModel::EndpointAngle.cdf(length, radius)
}

/// Distance along the chord from the coverage entry point to the first
/// intersection with the MUE-HF circle, or `None` if the chord misses it.
pub fn dist_to_mue_hf(geom: &CellGeometry, theta: f64) -> Option<f64> {
    let r = geom.coverage_radius;
    let offset = r * theta.sin().abs();
    let radicand = geom.mue_hf_radius.powi(2) - offset * offset;
    if radicand < 0.0 {
        return None;
    }
    Some(r * theta.cos() - radicand.sqrt())
}

/// Distance along the chord from the coverage exit point to the PUE-HF
/// circle.
pub fn dist_to_pue_hf(geom: &CellGeometry, theta: f64) -> f64 {
    let r = geom.coverage_radius;
    let offset = r * theta.sin().abs();
    (geom.pue_hf_radius.powi(2) - offset * offset).sqrt() - r * theta.cos()
}
