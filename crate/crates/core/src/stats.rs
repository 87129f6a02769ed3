//! Goodness-of-fit helpers.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// One-sample Kolmogorov–Smirnov distance between `samples` and `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Pearson chi-square test of `samples` against the uniform law on
/// `[lo, hi]` with `bins` equal bins. Returns `(statistic, p_value)`.
/// Samples outside the interval are clamped into the end bins.
pub fn chi_square_uniform(samples: &[f64], lo: f64, hi: f64, bins: usize) -> (f64, f64) {
    let mut counts = vec![0usize; bins];
    let width = (hi - lo) / bins as f64;
    for &x in samples {
        let i = ((x - lo) / width).floor().clamp(0.0, (bins - 1) as f64) as usize;
        counts[i] += 1;
    }
    let expected = samples.len() as f64 / bins as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((bins - 1) as f64).expect("at least two bins");
    (stat, 1.0 - dist.cdf(stat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn ks_on_exact_grid_is_half_step() {
        let s: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_statistic(&s, |x| x) - 0.005).abs() < 1e-12);
    }

    #[test]
    fn chi_square_accepts_uniform_and_rejects_skew() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let u: Vec<f64> = (0..5000).map(|_| rng.random::<f64>() * 3.0).collect();
        assert!(chi_square_uniform(&u, 0.0, 3.0, 10).1 > 0.01);
        let skew: Vec<f64> = u.iter().map(|x| x * x / 3.0).collect();
        assert!(chi_square_uniform(&skew, 0.0, 3.0, 10).1 < 1e-6);
    }
}
