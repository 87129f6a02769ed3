//! Handover offset distributions.
//!
//! The handover offset is the signed distance, measured along the UE path,
//! from the ideal coverage boundary to the point where the TTT actually
//! starts. Without fading it is uniform on `[0, υT_d)`; with fading it is an
//! empirical histogram whose support may extend below zero.

use std::fs;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MASS_TOLERANCE: f64 = 1e-9;

/// Piecewise-constant density with explicit bin edges (metres, 1/m).
///
/// Serialises to `{"edges":[...],"density":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHistogram", into = "RawHistogram")]
pub struct Histogram {
    edges: Vec<f64>,
    density: Vec<f64>,
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawHistogram {
    edges: Vec<f64>,
    density: Vec<f64>,
}

impl TryFrom<RawHistogram> for Histogram {
    type Error = Error;

    fn try_from(raw: RawHistogram) -> Result<Self> {
        Histogram::new(raw.edges, raw.density)
    }
}

impl From<Histogram> for RawHistogram {
    fn from(h: Histogram) -> Self {
        RawHistogram {
            edges: h.edges,
            density: h.density,
        }
    }
}

impl Histogram {
    /// Builds a histogram from an already-normalised density.
    pub fn new(edges: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        validate_edges(&edges, density.len())?;
        if density.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidHistogram(
                "densities must be finite and non-negative".into(),
            ));
        }
        let cumulative = cumulative_mass(&edges, &density);
        let mass = *cumulative.last().unwrap();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidHistogram(format!(
                "total mass {mass} differs from 1"
            )));
        }
        Ok(Self {
            edges,
            density,
            cumulative,
        })
    }

    /// Builds a histogram from non-negative per-bin weights (e.g. counts),
    /// normalising them to unit mass.
    pub fn from_weights(edges: Vec<f64>, weights: &[f64]) -> Result<Self> {
        validate_edges(&edges, weights.len())?;
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidHistogram(
                "weights must be finite and non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidHistogram("weights sum to zero".into()));
        }
        let density = weights
            .iter()
            .zip(edges.windows(2))
            .map(|(w, e)| w / total / (e[1] - e[0]))
            .collect();
        Self::new_renormalised(edges, density)
    }

    /// Single bin `[0, width)`: the no-fading offset density.
    pub fn uniform(width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidHistogram(format!(
                "uniform width must be positive, got {width}"
            )));
        }
        Self::new(vec![0.0, width], vec![1.0 / width])
    }

    /// Equal-width histogram of `samples` spanning their range. A sample set
    /// with no spread becomes one narrow bin centred on the common value.
    pub fn from_samples(samples: &[f64], bins: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidHistogram("no samples".into()));
        }
        if bins == 0 {
            return Err(Error::InvalidHistogram("bin count must be positive".into()));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidHistogram("non-finite sample".into()));
        }
        let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let spread = hi - lo;
        if spread <= 1e-9 * (1.0 + lo.abs()) {
            let half = 5e-7;
            return Self::from_weights(vec![lo - half, lo + half], &[1.0]);
        }
        let width = spread / bins as f64;
        let edges: Vec<f64> = (0..=bins)
            .map(|i| if i == bins { hi } else { lo + width * i as f64 })
            .collect();
        let mut counts = vec![0.0; bins];
        for &s in samples {
            let idx = (((s - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1.0;
        }
        Self::from_weights(edges, &counts)
    }

    /// Rescaled copy; the density is renormalised to unit mass.
    fn new_renormalised(edges: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        let mass = *cumulative_mass(&edges, &density).last().unwrap();
        let density = density.into_iter().map(|d| d / mass).collect();
        Self::new(edges, density)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn bins(&self) -> usize {
        self.density.len()
    }

    /// `(r̂_min, r̂_max)`.
    pub fn support(&self) -> (f64, f64) {
        (self.edges[0], *self.edges.last().unwrap())
    }

    /// Iterator over `(lower edge, upper edge, density)` triples.
    pub fn iter_bins(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.edges
            .windows(2)
            .zip(&self.density)
            .map(|(e, d)| (e[0], e[1], *d))
    }

    pub fn mean(&self) -> f64 {
        self.iter_bins()
            .map(|(a, b, d)| d * (b * b - a * a) / 2.0)
            .sum()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let i = self.edges.partition_point(|e| *e <= x) - 1;
        (self.cumulative[i] + self.density[i] * (x - self.edges[i])).min(1.0)
    }

    /// Inverse of the piecewise-linear CDF.
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let n = self.density.len();
        // first bin whose upper cumulative mass exceeds u
        let i = self.cumulative[1..]
            .partition_point(|c| *c <= u)
            .min(n - 1);
        let i = (i..n).find(|&j| self.density[j] > 0.0).unwrap_or(i);
        if self.density[i] == 0.0 {
            return self.edges[i + 1];
        }
        let x = self.edges[i] + (u - self.cumulative[i]) / self.density[i];
        x.clamp(self.edges[i], self.edges[i + 1])
    }

    /// Same shape translated by `delta` metres.
    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            edges: self.edges.iter().map(|e| e + delta).collect(),
            density: self.density.clone(),
            cumulative: self.cumulative.clone(),
        }
    }

    /// Density multiplied by `factor` and renormalised.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        Self::new_renormalised(
            self.edges.clone(),
            self.density.iter().map(|d| d * factor).collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("histogram serialisation is infallible")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|source| Error::Json {
            path: path.to_owned(),
            source,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

fn validate_edges(edges: &[f64], bins: usize) -> Result<()> {
    if bins == 0 {
        return Err(Error::InvalidHistogram("at least one bin required".into()));
    }
    if edges.len() != bins + 1 {
        return Err(Error::InvalidHistogram(format!(
            "{} edges for {} bins",
            edges.len(),
            bins
        )));
    }
    if edges.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidHistogram("non-finite edge".into()));
    }
    if edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidHistogram(
            "edges must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn cumulative_mass(edges: &[f64], density: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(edges.len());
    out.push(0.0);
    for (d, e) in density.iter().zip(edges.windows(2)) {
        acc += d * (e[1] - e[0]);
        out.push(acc);
    }
    out
}

/// Distribution of the handover offset `r_d`.
#[derive(Debug, Clone, PartialEq)]
pub enum OffsetDistribution {
    /// Uniform on `[0, width)`; `width = υT_d`. Zero width is a point mass
    /// at the coverage boundary.
    Uniform { width: f64 },
    Empirical(Histogram),
}

impl OffsetDistribution {
    pub fn uniform(width: f64) -> Result<Self> {
        if !width.is_finite() || width < 0.0 {
            return Err(Error::InvalidHistogram(format!(
                "uniform width must be finite and non-negative, got {width}"
            )));
        }
        Ok(OffsetDistribution::Uniform { width })
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            OffsetDistribution::Uniform { width } => (0.0, *width),
            OffsetDistribution::Empirical(h) => h.support(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        sample_offset(self, rng)
    }

    /// Piecewise-constant view of the distribution, or `None` for the
    /// degenerate zero-width uniform.
    pub fn as_histogram(&self) -> Option<Histogram> {
        match self {
            OffsetDistribution::Uniform { width } if *width > 0.0 => Histogram::uniform(*width).ok(),
            OffsetDistribution::Uniform { .. } => None,
            OffsetDistribution::Empirical(h) => Some(h.clone()),
        }
    }
}

pub fn sample_offset<R: Rng + ?Sized>(dist: &OffsetDistribution, rng: &mut R) -> f64 {
    match dist {
        OffsetDistribution::Uniform { width } => width * rng.random::<f64>(),
        OffsetDistribution::Empirical(h) => h.quantile(rng.random::<f64>()),
    }
}
