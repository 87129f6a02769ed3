//! Failure probabilities averaged over an empirical offset histogram.
//!
//! The histogram is piecewise constant, so every expectation is a sum of
//! per-bin integrals of the travel kernels in [`crate::kernel`]. Offsets that
//! leave the effective travel non-positive contribute no failure.

use crate::analytic::zero_boundaries;
use crate::error::Result;
use crate::geometry::{CellGeometry, MobilityConfig};
use crate::kernel;
use crate::offset::Histogram;
use crate::quadrature::{integrate_with_breakpoints, QuadratureSpec};

/// `∫ f(r) ρ(r) dr` for the histogram density `ρ`.
pub fn expectation<F: Fn(f64) -> f64>(
    hist: &Histogram,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
    f: F,
) -> Result<f64> {
    let mut total = 0.0;
    for (lo, hi, density) in hist.iter_bins() {
        if density == 0.0 {
            continue;
        }
        total += density * integrate_with_breakpoints(&f, lo, hi, breakpoints, spec)?;
    }
    Ok(total)
}

pub fn mue_hf_empirical(geom: &CellGeometry, mob: &MobilityConfig, f_rd: &Histogram) -> Result<f64> {
    let a = mob.macro_ttt_distance();
    let breaks = kernel::inbound_breakpoints(geom, a);
    let p = expectation(f_rd, &breaks, &QuadratureSpec::default(), |r| {
        kernel::mue_hf_given_travel(geom, a + r)
    })?;
    Ok(p.clamp(0.0, 1.0))
}

pub fn nho_empirical(geom: &CellGeometry, mob: &MobilityConfig, f_rd: &Histogram) -> Result<f64> {
    let a = mob.macro_ttt_distance();
    let breaks = kernel::inbound_breakpoints(geom, a);
    let p = expectation(f_rd, &breaks, &QuadratureSpec::default(), |r| {
        kernel::nho_given_travel(geom, a + r)
    })?;
    Ok(p.clamp(0.0, 1.0))
}

/// PUE-HF probability with one offset drawn per UE and reused on both legs.
pub fn pue_hf_empirical(geom: &CellGeometry, mob: &MobilityConfig, f_rd: &Histogram) -> Result<f64> {
    let a = mob.macro_ttt_distance();
    let b = mob.pico_ttt_distance();
    let mut breaks = kernel::inbound_breakpoints(geom, a).to_vec();
    let lengths = [geom.diameter(), geom.tangent_chord(), geom.half_tangent_chord()];
    breaks.extend(kernel::outbound_breakpoints(geom, &lengths).into_iter().map(|e| e - b));
    breaks.push(crate::analytic::crossover_root(geom, mob));
    let integrand = |r: f64| kernel::pue_hf_given_travels(geom, a + r, b + r);
    for (lo, hi, _) in f_rd.iter_bins() {
        breaks.extend(zero_boundaries(&integrand, lo, hi, 16));
    }
    let p = expectation(f_rd, &breaks, &QuadratureSpec::default(), integrand)?;
    Ok(p.clamp(0.0, 1.0))
}

/// PUE-HF probability with independent offsets on the inbound and outbound
/// legs, both drawn from `f_rd`.
pub fn pue_hf_empirical_independent(
    geom: &CellGeometry,
    mob: &MobilityConfig,
    f_rd: &Histogram,
) -> Result<f64> {
    let a = mob.macro_ttt_distance();
    let b = mob.pico_ttt_distance();
    let spec = QuadratureSpec::default();
    let inner_spec = QuadratureSpec::new(1e-11, 1000)?;
    let outer_breaks = kernel::inbound_breakpoints(geom, a);
    // failures in the inner integral are surfaced after the outer pass
    let inner_error = std::cell::RefCell::new(None);
    let outbound = |d_in: f64| -> f64 {
        let mut lengths = vec![geom.diameter(), geom.tangent_chord(), d_in];
        if d_in > 0.0 && d_in <= geom.half_tangent_chord() {
            lengths.push(kernel::mue_threshold(geom, d_in));
        }
        let breaks: Vec<f64> = kernel::outbound_breakpoints(geom, &lengths)
            .into_iter()
            .map(|e| e - b)
            .collect();
        match expectation(f_rd, &breaks, &inner_spec, |r| {
            kernel::pue_hf_given_travels(geom, d_in, b + r)
        }) {
            Ok(v) => v,
            Err(e) => {
                inner_error.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let p = expectation(f_rd, &outer_breaks, &spec, |r| outbound(a + r))?;
    if let Some(e) = inner_error.into_inner() {
        return Err(e);
    }
    Ok(p.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn grid() -> Vec<MobilityConfig> {
        let mut out = Vec::new();
        for kmh in (10..=120).step_by(10) {
            for ttt in [480.0, 160.0, 80.0, 40.0] {
                for td in [50.0, 150.0, 200.0] {
                    out.push(MobilityConfig::from_kmh_ms(kmh as f64, ttt, ttt, td).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn uniform_bin_reproduces_closed_forms() {
        let g = CellGeometry::default();
        for m in grid() {
            let h = Histogram::uniform(m.sampling_distance()).unwrap();
            assert_relative_eq!(
                mue_hf_empirical(&g, &m, &h).unwrap(),
                analytic::mue_hf_probability(&g, &m).unwrap(),
                epsilon = 1e-6
            );
            assert_relative_eq!(nho_empirical(&g, &m, &h).unwrap(), analytic::nho_probability(&g, &m), epsilon = 1e-6);
            assert_relative_eq!(
                pue_hf_empirical(&g, &m, &h).unwrap(),
                analytic::pue_hf_probability(&g, &m).unwrap(),
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn inbound_integral_matches_midpoint_rule() {
        let g = CellGeometry::default();
        let m = MobilityConfig::new(33.33, 0.48, 0.48, 0.2).unwrap();
        let a = m.macro_ttt_distance();
        let w = m.sampling_distance();
        let i1 = |r: f64| {
            let d = a + r;
            let x = (g.half_tangent_chord().powi(2) / d + d) / (2.0 * g.coverage_radius());
            if x >= 1.0 {
                0.0
            } else {
                1.0 - 2.0 / std::f64::consts::PI * x.asin()
            }
        };
        let n = 1_000_000;
        let step = w / n as f64;
        let riemann: f64 = (0..n).map(|i| i1((i as f64 + 0.5) * step) * step).sum();
        let h = Histogram::uniform(w).unwrap();
        let quad = mue_hf_empirical(&g, &m, &h).unwrap() * w;
        assert_relative_eq!(quad, riemann, epsilon = 1e-6);
    }

    #[test]
    fn narrow_bin_gives_fixed_offset_probability() {
        let g = CellGeometry::default();
        let m = MobilityConfig::new(33.33, 0.48, 0.48, 0.2).unwrap();
        for r0 in [-3.0, 0.0, 2.5, 6.0, 20.0] {
            let h = Histogram::from_weights(vec![r0 - 5e-7, r0 + 5e-7], &[1.0]).unwrap();
            let d = m.macro_ttt_distance() + r0;
            assert_relative_eq!(
                mue_hf_empirical(&g, &m, &h).unwrap(),
                kernel::mue_hf_given_travel(&g, d),
                epsilon = 1e-6
            );
            assert_relative_eq!(
                pue_hf_empirical(&g, &m, &h).unwrap(),
                kernel::pue_hf_given_travels(&g, d, m.pico_ttt_distance() + r0),
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn shifting_support_inward_raises_mue_hf() {
        let g = CellGeometry::default();
        let m = MobilityConfig::from_kmh_ms(120.0, 480.0, 480.0, 40.0).unwrap();
        let base = Histogram::from_weights(vec![-4.0, -1.0, 0.0, 1.0, 3.0], &[1.0, 3.0, 4.0, 2.0]).unwrap();
        let mut last = 0.0;
        for delta in [0.0, 1.0, 2.0, 5.0] {
            let p = mue_hf_empirical(&g, &m, &base.shifted(delta)).unwrap();
            assert!(p >= last - 1e-12);
            last = p;
        }
    }

    #[test]
    fn rescaled_density_gives_same_answer() {
        let g = CellGeometry::default();
        let m = MobilityConfig::from_kmh_ms(120.0, 480.0, 480.0, 40.0).unwrap();
        let edges = vec![-2.0, 0.0, 1.0, 4.0];
        let h1 = Histogram::from_weights(edges.clone(), &[1.0, 2.0, 3.0]).unwrap();
        let h2 = Histogram::from_weights(edges, &[7.0, 14.0, 21.0]).unwrap();
        assert_relative_eq!(
            mue_hf_empirical(&g, &m, &h1).unwrap(),
            mue_hf_empirical(&g, &m, &h2).unwrap(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            pue_hf_empirical(&g, &m, &h1).unwrap(),
            pue_hf_empirical(&g, &m, &h2).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn independent_legs_on_narrow_bin_match_shared() {
        let g = CellGeometry::default();
        let m = MobilityConfig::from_kmh_ms(120.0, 480.0, 480.0, 200.0).unwrap();
        let h = Histogram::from_weights(vec![2.0, 2.0 + 1e-6], &[1.0]).unwrap();
        assert_relative_eq!(
            pue_hf_empirical_independent(&g, &m, &h).unwrap(),
            pue_hf_empirical(&g, &m, &h).unwrap(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn independent_legs_match_direct_double_sum() {
        let g = CellGeometry::default();
        let m = MobilityConfig::from_kmh_ms(120.0, 480.0, 480.0, 200.0).unwrap();
        let w = m.sampling_distance();
        let h = Histogram::uniform(w).unwrap();
        let n = 2000;
        let step = w / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let d_in = m.macro_ttt_distance() + (i as f64 + 0.5) * step;
            for j in 0..n {
                let d_out = m.pico_ttt_distance() + (j as f64 + 0.5) * step;
                sum += kernel::pue_hf_given_travels(&g, d_in, d_out);
            }
        }
        let oracle = sum / (n * n) as f64;
        assert_relative_eq!(pue_hf_empirical_independent(&g, &m, &h).unwrap(), oracle, epsilon = 1e-5);
    }

    fn arb_histogram() -> impl Strategy<Value = Histogram> {
        (-20.0f64..20.0, prop::collection::vec((0.05f64..8.0, 0.0f64..5.0), 1..8)).prop_filter_map(
            "all-zero weights",
            |(start, bins)| {
                let mut edges = vec![start];
                for (width, _) in &bins {
                    edges.push(edges.last().unwrap() + width);
                }
                let weights: Vec<f64> = bins.iter().map(|b| b.1).collect();
                Histogram::from_weights(edges, &weights).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn results_are_probabilities(h in arb_histogram(), kmh in 0.0f64..150.0, ttt in 0.04f64..0.5) {
            let g = CellGeometry::default();
            let m = MobilityConfig::from_kmh_ms(kmh, ttt * 1000.0, ttt * 1000.0, 40.0).unwrap();
            for p in [
                mue_hf_empirical(&g, &m, &h).unwrap(),
                nho_empirical(&g, &m, &h).unwrap(),
                pue_hf_empirical(&g, &m, &h).unwrap(),
            ] {
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }
    }
}
