//! Closed-form failure probabilities without fading.
//!
//! The offset `r_d` is uniform on `[0, υT_d)`. Each probability is dispatched
//! on a half-open partition of `υT_m + υT_d` against the characteristic
//! lengths `R − r_m`, `√(R² − r_m²)` and `2√(R² − r_m²)`. Where the average
//! over `r_d` has no elementary antiderivative it is evaluated by adaptive
//! quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{CellGeometry, MobilityConfig};
use crate::kernel;
use crate::quadrature::{integrate_with_breakpoints, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProbabilityKind {
    Nho,
    MueHf,
    PueHf,
}

/// Which closed-form case applies to a (geometry, mobility) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub kind: ProbabilityKind,
    pub case_index: u8,
}

pub fn classify_regime(kind: ProbabilityKind, geom: &CellGeometry, mob: &MobilityConfig) -> RegimeLabel {
    let a = mob.macro_ttt_distance();
    let reach = a + mob.sampling_distance();
    let nearest = geom.coverage_radius() - geom.mue_hf_radius();
    let half = geom.half_tangent_chord();
    let full = geom.tangent_chord();
    let case_index = match kind {
        ProbabilityKind::Nho => {
            if reach <= full {
                1
            } else if a <= full {
                2
            } else {
                3
            }
        }
        ProbabilityKind::MueHf => {
            if reach <= nearest {
                1
            } else if reach <= half {
                2
            } else if a <= full {
                3
            } else {
                4
            }
        }
        ProbabilityKind::PueHf => {
            if reach <= half {
                1
            } else if reach <= full {
                2
            } else {
                3
            }
        }
    };
    RegimeLabel { kind, case_index }
}

/// `x·asin(x/2R) + √(4R² − x²)`, an antiderivative of `asin(x/2R)`.
fn arcsine_antiderivative(x: f64, radius: f64) -> f64 {
    let d = 2.0 * radius;
    x * (x / d).clamp(-1.0, 1.0).asin() + (d * d - x * x).max(0.0).sqrt()
}

/// No-handover probability.
pub fn nho_probability(geom: &CellGeometry, mob: &MobilityConfig) -> f64 {
    let a = mob.macro_ttt_distance();
    let w = mob.sampling_distance();
    if w == 0.0 {
        return kernel::nho_given_travel(geom, a);
    }
    let r = geom.coverage_radius();
    let c = geom.tangent_chord();
    let scale = 2.0 / (PI * w);
    let p = match classify_regime(ProbabilityKind::Nho, geom, mob).case_index {
        1 => scale * (arcsine_antiderivative(a + w, r) - arcsine_antiderivative(a, r)),
        2 => {
            let plateau = (c / (2.0 * r)).asin();
            scale
                * (arcsine_antiderivative(c, r) - arcsine_antiderivative(a, r)
                    + (a + w - c) * plateau)
        }
        _ => kernel::nho_saturated(geom),
    };
    p.clamp(0.0, 1.0)
}

/// Macro-UE handover-failure probability.
pub fn mue_hf_probability(geom: &CellGeometry, mob: &MobilityConfig) -> Result<f64> {
    match classify_regime(ProbabilityKind::MueHf, geom, mob).case_index {
        1 => Ok(0.0),
        4 => Ok(kernel::mue_hf_saturated(geom)),
        _ => {
            let a = mob.macro_ttt_distance();
            let breaks = kernel::inbound_breakpoints(geom, a);
            uniform_average(mob, &breaks, |r| kernel::mue_hf_given_travel(geom, a + r))
        }
    }
}

/// Pico-UE handover-failure probability with the same offset reused for the
/// inbound and outbound legs.
pub fn pue_hf_probability(geom: &CellGeometry, mob: &MobilityConfig) -> Result<f64> {
    let a = mob.macro_ttt_distance();
    let b = mob.pico_ttt_distance();
    let mut breaks = kernel::inbound_breakpoints(geom, a).to_vec();
    let lengths = [
        geom.diameter(),
        geom.tangent_chord(),
        geom.half_tangent_chord(),
    ];
    breaks.extend(kernel::outbound_breakpoints(geom, &lengths).into_iter().map(|e| e - b));
    breaks.push(crossover_root(geom, mob));
    let integrand = |r: f64| kernel::pue_hf_given_travels(geom, a + r, b + r);
    breaks.extend(zero_boundaries(&integrand, 0.0, mob.sampling_distance(), 64));
    uniform_average(mob, &breaks, integrand)
}

/// Points in `[lo, hi]` where `f` switches between zero and positive.
pub(crate) fn zero_boundaries<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    if !(hi > lo) {
        return Vec::new();
    }
    let step = (hi - lo) / grid as f64;
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut positive0 = f(x0) > 0.0;
    for i in 1..=grid {
        let x1 = lo + step * i as f64;
        let positive1 = f(x1) > 0.0;
        if positive1 != positive0 {
            let (mut a, mut b) = (x0, x1);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if (f(m) > 0.0) == positive0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        x0 = x1;
        positive0 = positive1;
    }
    out
}

fn uniform_average<F: Fn(f64) -> f64>(mob: &MobilityConfig, breaks: &[f64], f: F) -> Result<f64> {
    let w = mob.sampling_distance();
    if w == 0.0 {
        return Ok(f(0.0).clamp(0.0, 1.0));
    }
    let value = integrate_with_breakpoints(
        |r| f(r) / w,
        0.0,
        w,
        breaks,
        &QuadratureSpec::default(),
    )?;
    Ok(value.clamp(0.0, 1.0))
}

/// Where the offset sits relative to the crossover between the inbound
/// travel `υT_m + r_d` and the PUE-HF chord threshold `d_rp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// `υT_m + r_d > d_rp` for every `r_d ≥ 0`.
    BelowSupport,
    Within(f64),
    /// `υT_m + r_d < d_rp` across the whole offset support.
    AboveSupport,
}

/// Offset `r_d` solving `υT_m + r_d = (r_p² − R²)/(υT_p + r_d) − (υT_p + r_d)`.
///
/// Substituting `e = υT_p + r_d` gives `2e² + (υT_m − υT_p)e − (r_p² − R²) = 0`,
/// whose positive root is taken.
pub fn crossover_root(geom: &CellGeometry, mob: &MobilityConfig) -> f64 {
    let a = mob.macro_ttt_distance();
    let b = mob.pico_ttt_distance();
    let k = geom.pue_hf_radius().powi(2) - geom.coverage_radius().powi(2);
    let skew = a - b;
    let disc = (skew * skew + 8.0 * k).sqrt();
    let e = if skew >= 0.0 {
        2.0 * k / (skew + disc)
    } else {
        (disc - skew) / 4.0
    };
    e - b
}

/// [`crossover_root`] classified against the uniform offset support
/// `[0, υT_d)`.
pub fn crossover_offset(geom: &CellGeometry, mob: &MobilityConfig) -> Crossover {
    let root = crossover_root(geom, mob);
    if root < 0.0 {
        Crossover::BelowSupport
    } else if root >= mob.sampling_distance() {
        Crossover::AboveSupport
    } else {
        Crossover::Within(root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mob(kmh: f64, ttt_ms: f64, td_ms: f64) -> MobilityConfig {
        MobilityConfig::from_kmh_ms(kmh, ttt_ms, ttt_ms, td_ms).unwrap()
    }

    #[test]
    fn regime_examples() {
        let g = CellGeometry::default();
        let slow = MobilityConfig::new(8.333, 0.48, 0.48, 0.2).unwrap();
        assert_eq!(classify_regime(ProbabilityKind::MueHf, &g, &slow).case_index, 1);
        let fast = MobilityConfig::new(33.33, 0.48, 0.48, 0.2).unwrap();
        assert_eq!(classify_regime(ProbabilityKind::MueHf, &g, &fast).case_index, 2);
        let huge = MobilityConfig::new(200.0, 0.48, 0.48, 0.2).unwrap();
        assert_eq!(classify_regime(ProbabilityKind::Nho, &g, &huge).case_index, 3);
        assert_eq!(classify_regime(ProbabilityKind::MueHf, &g, &huge).case_index, 4);
        assert_eq!(classify_regime(ProbabilityKind::PueHf, &g, &huge).case_index, 3);
    }

    #[test]
    fn nho_limits() {
        let g = CellGeometry::default();
        let still = MobilityConfig::new(0.0, 0.48, 0.48, 0.2).unwrap();
        assert_eq!(nho_probability(&g, &still), 0.0);
        let crawl = MobilityConfig::new(1e-9, 0.48, 0.48, 0.2).unwrap();
        assert!(nho_probability(&g, &crawl) < 1e-9);
        let huge = MobilityConfig::new(500.0, 0.48, 0.48, 0.2).unwrap();
        assert_relative_eq!(
            nho_probability(&g, &huge),
            2.0 / PI * (1596f64.sqrt() / 50.0).atan(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn nho_closed_form_matches_quadrature_of_kernel() {
        let g = CellGeometry::default();
        for kmh in [10.0, 60.0, 120.0, 250.0, 400.0, 600.0] {
            for td in [50.0, 200.0, 1000.0] {
                let m = mob(kmh, 480.0, td);
                let a = m.macro_ttt_distance();
                let breaks = kernel::inbound_breakpoints(&g, a);
                let q = uniform_average(&m, &breaks, |r| kernel::nho_given_travel(&g, a + r)).unwrap();
                assert_relative_eq!(nho_probability(&g, &m), q, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn mue_case_one_is_exact_zero() {
        let g = CellGeometry::default();
        let m = MobilityConfig::new(8.333, 0.48, 0.48, 0.2).unwrap();
        assert_eq!(mue_hf_probability(&g, &m).unwrap(), 0.0);
    }

    #[test]
    fn saturated_regime_is_complementary() {
        let g = CellGeometry::default();
        for speed in [300.0, 400.0, 1000.0] {
            let m = MobilityConfig::new(speed, 0.48, 0.48, 0.2).unwrap();
            let sum = nho_probability(&g, &m) + mue_hf_probability(&g, &m).unwrap();
            assert_relative_eq!(sum, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn mue_monotone_in_speed() {
        let g = CellGeometry::default();
        let mut last = 0.0;
        for v in 1..=40 {
            let m = MobilityConfig::new(v as f64, 0.48, 0.48, 0.2).unwrap();
            let p = mue_hf_probability(&g, &m).unwrap();
            assert!(p >= last - 1e-12, "v={v}: {p} < {last}");
            last = p;
        }
    }

    #[test]
    fn case_boundaries_are_continuous() {
        let g = CellGeometry::default();
        let w = 2.0;
        let td = 0.2;
        let speed = w / td;
        let boundaries = [
            g.coverage_radius() - g.mue_hf_radius() - w,
            g.half_tangent_chord() - w,
            g.tangent_chord() - w,
            g.tangent_chord(),
        ];
        for boundary in boundaries {
            let at = |a: f64| MobilityConfig::new(speed, a / speed, a / speed, td).unwrap();
            let lo = at(boundary * (1.0 - 1e-6));
            let hi = at(boundary * (1.0 + 1e-6));
            assert!((nho_probability(&g, &lo) - nho_probability(&g, &hi)).abs() < 1e-4);
            assert!(
                (mue_hf_probability(&g, &lo).unwrap() - mue_hf_probability(&g, &hi).unwrap()).abs()
                    < 1e-4
            );
            assert!(
                (pue_hf_probability(&g, &lo).unwrap() - pue_hf_probability(&g, &hi).unwrap()).abs()
                    < 1e-4
            );
        }
    }

    #[test]
    fn crossover_satisfies_defining_equation() {
        let g = CellGeometry::default();
        for (a, b) in [(2.667, 2.667), (16.0, 5.0), (1.0, 30.0), (0.0, 0.0)] {
            let speed = 10.0;
            let m = MobilityConfig::new(speed, a / speed + 1e-12, b / speed + 1e-12, 0.2).unwrap();
            let r = crossover_root(&g, &m);
            let d_vm = m.macro_ttt_distance() + r;
            let d_rp = kernel::pue_threshold(&g, m.pico_ttt_distance() + r);
            assert!((d_vm - d_rp).abs() < 1e-9, "a={a} b={b}: {d_vm} vs {d_rp}");
        }
    }

    #[test]
    fn crossover_sentinels() {
        let g = CellGeometry::default();
        let m = MobilityConfig::new(1000.0, 0.48, 0.01, 0.2).unwrap();
        assert_eq!(crossover_offset(&g, &m), Crossover::BelowSupport);
        let m = MobilityConfig::new(33.33, 0.08, 0.08, 0.2).unwrap();
        assert_eq!(crossover_offset(&g, &m), Crossover::AboveSupport);
        let m = MobilityConfig::new(33.33, 0.48, 0.48, 2.0).unwrap();
        assert!(matches!(crossover_offset(&g, &m), Crossover::Within(_)));
    }

    #[test]
    fn pue_zero_below_reach_threshold() {
        let g = CellGeometry::default();
        // υT_m + υT_p + 2υT_d stays under √(r_p²−r_m²) − √(R²−r_m²) ≈ 19.92 m
        let m = MobilityConfig::new(10.0, 0.8, 0.8, 0.15).unwrap();
        assert_eq!(pue_hf_probability(&g, &m).unwrap(), 0.0);
        for kmh in (10..=120).step_by(10) {
            let m = mob(kmh as f64, 160.0, 200.0);
            assert_eq!(pue_hf_probability(&g, &m).unwrap(), 0.0);
        }
    }

    #[test]
    fn probabilities_in_unit_interval() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let rm = rng.random_range(5.0..60.0);
            let r = rng.random_range(rm + 0.5..rm + 40.0);
            let rp = rng.random_range(r + 0.5..r + 60.0);
            let g = CellGeometry::new(r, rm, rp).unwrap();
            let m = MobilityConfig::new(
                rng.random_range(0.0..60.0),
                rng.random_range(0.01..1.0),
                rng.random_range(0.01..1.0),
                rng.random_range(0.01..0.5),
            )
            .unwrap();
            for p in [
                nho_probability(&g, &m),
                mue_hf_probability(&g, &m).unwrap(),
                pue_hf_probability(&g, &m).unwrap(),
            ] {
                assert!((0.0..=1.0).contains(&p));
            }
        }
    }
}
