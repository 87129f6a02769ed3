//! Spatially correlated log-normal shadowing.
//!
//! The field is a sum of `M` random sinusoids whose wave vectors follow an
//! isotropic bivariate Cauchy law with scale `1/d`. Its characteristic
//! function is `exp(−|Δ|/d)`, so the ensemble autocorrelation is exactly
//! exponential. The field is rasterised once on a square grid and read back
//! with bilinear interpolation.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct ShadowingMap {
    origin: (f64, f64),
    step: f64,
    size: usize,
    values: Vec<f64>,
}

impl ShadowingMap {
    /// A zero field, for cells without shadowing.
    pub fn flat() -> Self {
        Self {
            origin: (0.0, 0.0),
            step: 1.0,
            size: 0,
            values: Vec::new(),
        }
    }

    /// Field of standard deviation `sigma` (dB) over the square centred on
    /// `centre` with half-width `half_width`.
    pub fn generate<R: Rng + ?Sized>(
        sigma: f64,
        decorrelation: f64,
        centre: (f64, f64),
        half_width: f64,
        step: f64,
        sinusoids: usize,
        rng: &mut R,
    ) -> Self {
        if sigma == 0.0 {
            return Self::flat();
        }
        let size = (2.0 * half_width / step).ceil() as usize + 2;
        let origin = (centre.0 - half_width, centre.1 - half_width);
        let mut values = vec![0.0; size * size];
        // wave numbers beyond a quarter of the grid rate would alias; redraw them
        let k_max = std::f64::consts::FRAC_PI_2 / step;
        let amplitude = sigma * (2.0 / sinusoids as f64).sqrt();
        for _ in 0..sinusoids {
            let (kx, ky) = loop {
                let zx: f64 = StandardNormal.sample(rng);
                let zy: f64 = StandardNormal.sample(rng);
                let w: f64 = StandardNormal.sample(rng);
                let scale = 1.0 / (decorrelation * w.abs());
                let (kx, ky) = (zx * scale, zy * scale);
                if kx.hypot(ky) <= k_max {
                    break (kx, ky);
                }
            };
            let phase = rng.random::<f64>() * std::f64::consts::TAU;
            let (sx, cx) = (kx * step).sin_cos();
            for row in 0..size {
                let y = origin.1 + row as f64 * step;
                let (mut s, mut c) = (kx * origin.0 + ky * y + phase).sin_cos();
                let line = &mut values[row * size..(row + 1) * size];
                for v in line.iter_mut() {
                    *v += amplitude * c;
                    let next_c = c * cx - s * sx;
                    s = s * cx + c * sx;
                    c = next_c;
                }
            }
        }
        Self {
            origin,
            step,
            size,
            values,
        }
    }

    /// Shadowing in dB at `(x, y)`; positions off the grid are clamped to it.
    pub fn at(&self, x: f64, y: f64) -> f64 {
        if self.size == 0 {
            return 0.0;
        }
        let last = (self.size - 1) as f64;
        let fx = ((x - self.origin.0) / self.step).clamp(0.0, last);
        let fy = ((y - self.origin.1) / self.step).clamp(0.0, last);
        let ix = (fx.floor() as usize).min(self.size - 2);
        let iy = (fy.floor() as usize).min(self.size - 2);
        let (tx, ty) = (fx - ix as f64, fy - iy as f64);
        let v = |i: usize, j: usize| self.values[j * self.size + i];
        let bottom = v(ix, iy) * (1.0 - tx) + v(ix + 1, iy) * tx;
        let top = v(ix, iy + 1) * (1.0 - tx) + v(ix + 1, iy + 1) * tx;
        bottom * (1.0 - ty) + top * ty
    }
}
