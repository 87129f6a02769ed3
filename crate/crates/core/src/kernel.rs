//! Failure probabilities over the chord angle for a fixed travel distance.
//!
//! With the entry angle uniform on `[-π/2, π/2]`, every event below is a
//! statement about the chord length `l(θ)` alone, and `P(l ≤ x)` is
//! `(2/π) asin(x / 2R)`. The closed-form, semi-analytic and sweep paths all
//! average these kernels over an offset density.
//!
//! `d_in = υT_m + r_d` is the distance from the coverage entry point to where
//! the macro TTT expires; `d_out = υT_p + r_d'` is the distance from the
//! coverage exit point to where the pico TTT expires.

use crate::geometry::CellGeometry;

/// `d_rm = (R² − r_m²)/d + d`: chords at least this long reach the MUE-HF
/// circle within travel `d` (valid while `d ≤ √(R² − r_m²)`).
pub fn mue_threshold(geom: &CellGeometry, d_in: f64) -> f64 {
    geom.half_tangent_chord().powi(2) / d_in + d_in
}

/// `d_rp = (r_p² − R²)/d − d`: chords longer than this reach the PUE-HF
/// circle within travel `d` past the exit point.
pub fn pue_threshold(geom: &CellGeometry, d_out: f64) -> f64 {
    let k = geom.pue_hf_radius().powi(2) - geom.coverage_radius().powi(2);
    k / d_out - d_out
}

/// Travel past the exit point at which `d_rp` equals `length`.
pub fn pue_travel_for_threshold(geom: &CellGeometry, length: f64) -> f64 {
    let k = geom.pue_hf_radius().powi(2) - geom.coverage_radius().powi(2);
    // positive root of d² + length·d − k = 0
    let disc = (length * length + 4.0 * k).sqrt();
    if length >= 0.0 {
        2.0 * k / (length + disc)
    } else {
        (disc - length) / 2.0
    }
}

/// Saturated MUE-HF probability: the chance that a chord meets the MUE-HF
/// circle at all.
pub fn mue_hf_saturated(geom: &CellGeometry) -> f64 {
    1.0 - nho_saturated(geom)
}

/// Saturated no-handover probability: the chance that a chord misses the
/// MUE-HF circle, `(2/π) atan(√(R² − r_m²)/r_m)`.
pub fn nho_saturated(geom: &CellGeometry) -> f64 {
    2.0 / std::f64::consts::PI * (geom.half_tangent_chord() / geom.mue_hf_radius()).atan()
}

/// Probability that the UE reaches the MUE-HF circle before the macro TTT
/// expires.
pub fn mue_hf_given_travel(geom: &CellGeometry, d_in: f64) -> f64 {
    let nearest = geom.coverage_radius() - geom.mue_hf_radius();
    if d_in < nearest {
        0.0
    } else if d_in <= geom.half_tangent_chord() {
        1.0 - geom.chord_cdf(mue_threshold(geom, d_in))
    } else {
        mue_hf_saturated(geom)
    }
}

/// Probability that the UE leaves the coverage circle before the macro TTT
/// expires without touching the MUE-HF circle.
pub fn nho_given_travel(geom: &CellGeometry, d_in: f64) -> f64 {
    geom.chord_cdf(d_in.clamp(0.0, geom.tangent_chord()))
}

/// Longest chord on which the inbound handover completes without an MUE HF.
fn inbound_ceiling(geom: &CellGeometry, d_in: f64) -> f64 {
    if d_in <= 0.0 {
        geom.diameter()
    } else if d_in <= geom.half_tangent_chord() {
        mue_threshold(geom, d_in).min(geom.diameter())
    } else {
        geom.tangent_chord()
    }
}

/// Probability that the inbound handover succeeds and the UE then reaches
/// the PUE-HF circle before the pico TTT expires.
pub fn pue_hf_given_travels(geom: &CellGeometry, d_in: f64, d_out: f64) -> f64 {
    if d_out <= 0.0 {
        return 0.0;
    }
    let upper = inbound_ceiling(geom, d_in);
    let lower = d_in.max(pue_threshold(geom, d_out));
    if lower >= upper {
        0.0
    } else {
        (geom.chord_cdf(upper) - geom.chord_cdf(lower)).max(0.0)
    }
}

/// Probability that the inbound handover succeeds.
pub fn inbound_success_given_travel(geom: &CellGeometry, d_in: f64) -> f64 {
    (1.0 - mue_hf_given_travel(geom, d_in) - nho_given_travel(geom, d_in)).max(0.0)
}

/// Offsets, relative to `υT_m`, at which the inbound kernels change form.
pub fn inbound_breakpoints(geom: &CellGeometry, macro_distance: f64) -> [f64; 5] {
    [
        -macro_distance,
        geom.coverage_radius() - geom.mue_hf_radius() - macro_distance,
        geom.half_tangent_chord() - macro_distance,
        geom.tangent_chord() - macro_distance,
        geom.diameter() - macro_distance,
    ]
}

/// Outbound travels at which `d_rp` crosses one of the given lengths.
pub fn outbound_breakpoints(geom: &CellGeometry, lengths: &[f64]) -> Vec<f64> {
    lengths
        .iter()
        .map(|&l| pue_travel_for_threshold(geom, l))
        .chain(std::iter::once(0.0))
        .collect()
}
