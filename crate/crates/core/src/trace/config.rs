//! Radio scenario for the trace simulator, read from a flat TOML table.
//!
//! | key | unit |
//! |---|---|
//! | `macro_x`, `macro_y`, `pico_x`, `pico_y` | m |
//! | `macro_tx_power`, `pico_tx_power` | dBm |
//! | `pathloss_macro_intercept`, `pathloss_pico_intercept` | dB at 1 km |
//! | `pathloss_macro_slope`, `pathloss_pico_slope` | dB per decade |
//! | `shadowing_sigma_macro`, `shadowing_sigma_pico` | dB, 0 disables |
//! | `shadowing_decorrelation` | m |
//! | `shadowing_resolution` | m, raster step of the shadowing map |
//! | `shadowing_sinusoids` | count |
//! | `shadowing_drops` | independent shadowing realisations cycled through by a trace |
//! | `drop_legs` | ring legs walked in one realisation before moving to the next |
//! | `fast_fading_enabled` | bool |
//! | `hysteresis`, `qout_sinr` | dB |
//! | `noise_power` | dBm |
//! | `rsrp_sample_period` | ms, must be 40 |
//! | `l1_window` | samples, must be 5 |
//! | `l3_filter_index` | integer `k`, coefficient `(1/2)^(k/4)` |
//! | `ring_radius` | m, bouncing ring centred on the pico |
//!
//! Missing keys take the [`Default`] values.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presets::l3_coefficient;

/// Which impairments are switched on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FadingCase {
    /// Path loss only.
    Case1,
    /// Path loss and shadowing.
    Case2,
    /// Path loss, shadowing and fast fading.
    Case3,
}

impl FadingCase {
    pub const ALL: [FadingCase; 3] = [Self::Case1, Self::Case2, Self::Case3];

    pub fn index(self) -> u8 {
        match self {
            Self::Case1 => 1,
            Self::Case2 => 2,
            Self::Case3 => 3,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().trim_start_matches("case") {
            "1" => Ok(Self::Case1),
            "2" => Ok(Self::Case2),
            "3" => Ok(Self::Case3),
            _ => Err(Error::Config(format!("unknown fading case '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioConfig {
    pub macro_x: f64,
    pub macro_y: f64,
    pub pico_x: f64,
    pub pico_y: f64,
    pub macro_tx_power: f64,
    pub pico_tx_power: f64,
    pub pathloss_macro_intercept: f64,
    pub pathloss_macro_slope: f64,
    pub pathloss_pico_intercept: f64,
    pub pathloss_pico_slope: f64,
    pub shadowing_sigma_macro: f64,
    pub shadowing_sigma_pico: f64,
    pub shadowing_decorrelation: f64,
    pub shadowing_resolution: f64,
    pub shadowing_sinusoids: usize,
    pub shadowing_drops: usize,
    pub drop_legs: usize,
    pub fast_fading_enabled: bool,
    pub hysteresis: f64,
    pub qout_sinr: f64,
    pub noise_power: f64,
    pub rsrp_sample_period: f64,
    pub l1_window: usize,
    pub l3_filter_index: u32,
    pub ring_radius: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            macro_x: 1500.0,
            macro_y: 1500.0,
            // about 445 m from the macro, which puts the noise-free
            // coverage edge near 64 m
            pico_x: 1945.0,
            pico_y: 1500.0,
            macro_tx_power: 46.0,
            pico_tx_power: 30.0,
            pathloss_macro_intercept: 128.1,
            pathloss_macro_slope: 37.6,
            pathloss_pico_intercept: 140.7,
            pathloss_pico_slope: 36.7,
            shadowing_sigma_macro: 8.0,
            shadowing_sigma_pico: 10.0,
            shadowing_decorrelation: 25.0,
            shadowing_resolution: 2.0,
            shadowing_sinusoids: 256,
            shadowing_drops: 64,
            drop_legs: 20,
            fast_fading_enabled: true,
            hysteresis: 2.0,
            qout_sinr: -8.0,
            noise_power: -95.0,
            rsrp_sample_period: 40.0,
            l1_window: 5,
            l3_filter_index: 4,
            ring_radius: 200.0,
        }
    }
}

impl RadioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("flat table serialises")
    }

    /// Switches shadowing and fast fading to match `case`, keeping the
    /// configured sigmas for the cases that use shadowing.
    pub fn with_case(mut self, case: FadingCase) -> Self {
        if case == FadingCase::Case1 {
            self.shadowing_sigma_macro = 0.0;
            self.shadowing_sigma_pico = 0.0;
        }
        self.fast_fading_enabled = case == FadingCase::Case3;
        self
    }

    pub fn with_l3_filter_index(mut self, k: u32) -> Self {
        self.l3_filter_index = k;
        self
    }

    pub fn l3_coefficient(&self) -> f64 {
        l3_coefficient(self.l3_filter_index)
    }

    pub fn shadowing_enabled(&self) -> bool {
        self.shadowing_sigma_macro > 0.0 || self.shadowing_sigma_pico > 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.macro_x,
            self.macro_y,
            self.pico_x,
            self.pico_y,
            self.macro_tx_power,
            self.pico_tx_power,
            self.pathloss_macro_intercept,
            self.pathloss_macro_slope,
            self.pathloss_pico_intercept,
            self.pathloss_pico_slope,
            self.hysteresis,
            self.qout_sinr,
            self.noise_power,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("radio parameters must be finite".into()));
        }
        if !(self.shadowing_sigma_macro >= 0.0 && self.shadowing_sigma_pico >= 0.0) {
            return Err(Error::Config("shadowing sigma must be non-negative".into()));
        }
        if !(self.shadowing_decorrelation > 0.0) || !(self.shadowing_resolution > 0.0) {
            return Err(Error::Config(
                "shadowing decorrelation and resolution must be positive".into(),
            ));
        }
        if self.shadowing_sinusoids == 0 || self.shadowing_drops == 0 || self.drop_legs == 0 {
            return Err(Error::Config(
                "shadowing and drop counts must be positive".into(),
            ));
        }
        if self.rsrp_sample_period != 40.0 {
            return Err(Error::Config(format!(
                "rsrp_sample_period is fixed at 40 ms, got {}",
                self.rsrp_sample_period
            )));
        }
        if self.l1_window != 5 {
            return Err(Error::Config(format!("l1_window is fixed at 5, got {}", self.l1_window)));
        }
        if !(self.ring_radius > 0.0) {
            return Err(Error::Config("ring_radius must be positive".into()));
        }
        Ok(())
    }
}
