//! L1 averaging and L3 smoothing of RSRP measurements.

use std::collections::VecDeque;

/// Arithmetic mean of linear-power samples.
pub fn l1_filter(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// `F(n) = (1 − a)·F(n−1) + a·10·log10(M(n))`, in dB.
pub fn l3_filter(prev: f64, m_n: f64, a: f64) -> f64 {
    (1.0 - a) * prev + a * 10.0 * m_n.log10()
}

/// Sliding L1 window feeding an L3 filter.
#[derive(Debug, Clone)]
pub struct MeasurementChain {
    window: VecDeque<f64>,
    capacity: usize,
    coefficient: f64,
    filtered: Option<f64>,
}

impl MeasurementChain {
    pub fn new(window: usize, coefficient: f64) -> Self {
        Self {
            window: VecDeque::with_capacity(window),
            capacity: window,
            coefficient,
            filtered: None,
        }
    }

    /// Adds one linear-power RSRP sample.
    pub fn push(&mut self, sample: f64) {
        if self.window.len() == self.capacity {
            self.window.pop_front();
        }
        self.window.push_back(sample);
    }

    /// Feeds the current L1 average to the L3 filter and returns its output
    /// in dB. The first update initialises the filter to the L1 value.
    pub fn update(&mut self) -> Option<f64> {
        if self.window.is_empty() {
            return self.filtered;
        }
        let (a, b) = self.window.as_slices();
        let m = (a.iter().sum::<f64>() + b.iter().sum::<f64>()) / self.window.len() as f64;
        let next = match self.filtered {
            None => 10.0 * m.log10(),
            Some(prev) => l3_filter(prev, m, self.coefficient),
        };
        self.filtered = Some(next);
        self.filtered
    }

    pub fn filtered(&self) -> Option<f64> {
        self.filtered
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn l1_examples() {
        assert_eq!(l1_filter(&[2.5; 5]), 2.5);
        assert_eq!(l1_filter(&[1.0, 2.0, 3.0, 4.0, 5.0]), 3.0);
    }

    #[test]
    fn l1_matches_compensated_sum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let s: Vec<f64> = (0..5).map(|_| 10f64.powf(rng.random_range(-12.0..-3.0))).collect();
            // Neumaier summation as the higher-precision reference
            let (mut sum, mut comp) = (0.0f64, 0.0f64);
            for &x in &s {
                let t = sum + x;
                comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
                sum = t;
            }
            let oracle = (sum + comp) / 5.0;
            assert_relative_eq!(l1_filter(&s), oracle, max_relative = 1e-15);
        }
    }

    #[test]
    fn l3_examples() {
        assert_relative_eq!(l3_filter(-40.0, 100.0, 1.0), 20.0);
        let mut f = 0.0;
        for _ in 0..3 {
            f = l3_filter(f, 10.0, 0.5);
        }
        assert_relative_eq!(f, 8.75, epsilon = 1e-12);
    }

    #[test]
    fn l3_contracts_towards_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = rng.random_range(0.01..=1.0);
            let m: f64 = rng.random_range(1e-3..1e3);
            let prev = rng.random_range(-100.0..100.0);
            let target = 10.0 * m.log10();
            let next = l3_filter(prev, m, a);
            assert!((next - target).abs() <= (1.0 - a) * (prev - target).abs() + 1e-9);
        }
    }

    #[test]
    fn chain_initialises_then_smooths() {
        let mut c = MeasurementChain::new(5, 0.5);
        assert_eq!(c.update(), None);
        c.push(1.0);
        assert_eq!(c.update(), Some(0.0));
        for _ in 0..5 {
            c.push(10.0);
        }
        assert_relative_eq!(c.update().unwrap(), 5.0);
    }
}
