//! Handover parameter sets: TTT paired with the L3 filter index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TttPreset {
    Set1,
    Set2,
    Set3,
    Set4,
}

impl TttPreset {
    pub const ALL: [TttPreset; 4] = [Self::Set1, Self::Set2, Self::Set3, Self::Set4];

    pub fn ttt_ms(self) -> f64 {
        match self {
            Self::Set1 => 480.0,
            Self::Set2 => 160.0,
            Self::Set3 => 80.0,
            Self::Set4 => 40.0,
        }
    }

    /// Standardised L3 filter index `k`; the effective coefficient is `(1/2)^(k/4)`.
    pub fn l3_filter_index(self) -> u32 {
        match self {
            Self::Set1 => 4,
            Self::Set2 | Self::Set3 => 1,
            Self::Set4 => 0,
        }
    }

    pub fn from_ttt_ms(ms: f64) -> Option<Self> {
        Self::ALL.into_iter().find(|p| (p.ttt_ms() - ms).abs() < 1e-9)
    }

    /// Accepts `1`..`4`, `set1`..`set4` or a TTT in ms.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let t = t.strip_prefix("set").unwrap_or(&t);
        match t {
            "1" => return Ok(Self::Set1),
            "2" => return Ok(Self::Set2),
            "3" => return Ok(Self::Set3),
            "4" => return Ok(Self::Set4),
            _ => {}
        }
        t.trim_end_matches("ms")
            .parse::<f64>()
            .ok()
            .and_then(Self::from_ttt_ms)
            .ok_or_else(|| Error::Config(format!("unknown TTT preset '{s}'")))
    }
}

/// `(1/2)^(k/4)`.
pub fn l3_coefficient(k: u32) -> f64 {
    0.5f64.powf(k as f64 / 4.0)
}
