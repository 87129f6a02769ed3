//! Bouncing-ring mobility: straight lines inside a circle, with a uniformly
//! random inward heading after each wall hit.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Macro,
    Pico,
}

impl Cell {
    pub fn other(self) -> Self {
        match self {
            Self::Macro => Self::Pico,
            Self::Pico => Self::Macro,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ring {
    pub centre: (f64, f64),
    pub radius: f64,
}

impl Ring {
    /// Distance along `heading` from an interior `position` to the ring.
    fn exit_distance(&self, position: (f64, f64), heading: f64) -> f64 {
        let (ux, uy) = (heading.cos(), heading.sin());
        let (px, py) = (position.0 - self.centre.0, position.1 - self.centre.1);
        let b = px * ux + py * uy;
        let c = px * px + py * py - self.radius * self.radius;
        let disc = (b * b - c).max(0.0).sqrt();
        (-b + disc).max(0.0)
    }

    /// Uniformly random heading pointing into the ring from the boundary
    /// point `position`.
    pub fn inward_heading<R: Rng + ?Sized>(&self, position: (f64, f64), rng: &mut R) -> f64 {
        let normal = (self.centre.1 - position.1).atan2(self.centre.0 - position.0);
        normal + PI * (rng.random::<f64>() - 0.5)
    }

    /// Uniformly random point on the ring with a random inward heading.
    pub fn random_start<R: Rng + ?Sized>(&self, rng: &mut R) -> ((f64, f64), f64) {
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let p = (
            self.centre.0 + self.radius * phi.cos(),
            self.centre.1 + self.radius * phi.sin(),
        );
        (p, self.inward_heading(p, rng))
    }
}

/// UE state carried between RSRP samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UeState {
    pub position: (f64, f64),
    pub heading: f64,
    pub serving_cell: Cell,
    /// Filtered RSRP in dBm, once the first measurement has been taken.
    pub l3_macro: Option<f64>,
    pub l3_pico: Option<f64>,
    /// Seconds since the running TTT started.
    pub ttt_elapsed: Option<f64>,
}

impl UeState {
    pub fn new(position: (f64, f64), heading: f64, serving_cell: Cell) -> Self {
        Self {
            position,
            heading,
            serving_cell,
            l3_macro: None,
            l3_pico: None,
            ttt_elapsed: None,
        }
    }
}

/// Advances the UE by `speed·dt`, bouncing off the ring as often as needed.
/// Returns the new state and whether a bounce happened.
pub fn step_bouncing_ring<R: Rng + ?Sized>(
    mut state: UeState,
    speed: f64,
    dt: f64,
    ring: &Ring,
    rng: &mut R,
) -> (UeState, bool) {
    let mut left = speed * dt;
    let mut bounced = false;
    while left > 0.0 {
        let to_wall = ring.exit_distance(state.position, state.heading);
        let d = left.min(to_wall);
        state.position.0 += d * state.heading.cos();
        state.position.1 += d * state.heading.sin();
        left -= d;
        if left > 0.0 || to_wall == d {
            state.heading = ring.inward_heading(state.position, rng);
            bounced = true;
        }
    }
    (state, bounced)
}

/// Lengths of the chords that successive ring legs cut through a concentric
/// circle of radius `inner`, until `n` crossings have been collected.
pub fn ring_crossing_chords(ring_radius: f64, inner: f64, n: usize, seed: u64) -> Vec<f64> {
    let ring = Ring {
        centre: (0.0, 0.0),
        radius: ring_radius,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut p, mut heading) = ring.random_start(&mut rng);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (ux, uy) = (heading.cos(), heading.sin());
        // perpendicular distance from the centre to the leg's line
        let miss = (p.0 * uy - p.1 * ux).abs();
        if miss < inner {
            out.push(2.0 * (inner * inner - miss * miss).sqrt());
        }
        let d = ring.exit_distance(p, heading);
        p = (p.0 + d * ux, p.1 + d * uy);
        // re-project to keep rounding from drifting off the wall
        let r = p.0.hypot(p.1);
        p = (p.0 * ring_radius / r, p.1 * ring_radius / r);
        heading = ring.inward_heading(p, &mut rng);
    }
    out
}

/// Angle between a heading and the inward normal at the ring, in `[-π/2, π/2]`.
pub fn incidence_angle(ring: &Ring, position: (f64, f64), heading: f64) -> f64 {
    let normal = (ring.centre.1 - position.1).atan2(ring.centre.0 - position.0);
    let mut d = heading - normal;
    while d > PI {
        d -= 2.0 * PI;
    }
    while d < -PI {
        d += 2.0 * PI;
    }
    d.clamp(-FRAC_PI_2, FRAC_PI_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ChordModel;
    use crate::stats::ks_statistic;

    fn ring() -> Ring {
        Ring {
            centre: (0.0, 0.0),
            radius: 200.0,
        }
    }

    #[test]
    fn straight_step_from_centre() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = UeState::new((0.0, 0.0), 0.0, Cell::Macro);
        let (next, bounced) = step_bouncing_ring(s, 10.0, 0.04, &ring(), &mut rng);
        assert!(!bounced);
        assert_eq!(next.position.0, 0.4);
        assert_eq!(next.position.1, 0.0);
    }

    #[test]
    fn stays_inside_the_ring() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = ring();
        let (p, h) = r.random_start(&mut rng);
        let mut s = UeState::new(p, h, Cell::Macro);
        let (speed, dt) = (33.0, 0.04);
        for _ in 0..1_000_000 {
            s = step_bouncing_ring(s, speed, dt, &r, &mut rng).0;
            assert!(s.position.0.hypot(s.position.1) <= r.radius + speed * dt);
        }
    }

    #[test]
    fn reflected_headings_point_inward_uniformly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = ring();
        let angles: Vec<f64> = (0..20_000)
            .map(|_| {
                let (p, h) = r.random_start(&mut rng);
                incidence_angle(&r, p, h)
            })
            .collect();
        let ks = ks_statistic(&angles, |a| (a + FRAC_PI_2) / PI);
        assert!(ks < 0.015, "ks {ks}");
    }

    #[test]
    fn stepped_crossings_match_leg_geometry() {
        // walk with small steps and measure time spent inside the circle
        let inner = 60.0;
        let r = ring();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (p, h) = r.random_start(&mut rng);
        let mut s = UeState::new(p, h, Cell::Macro);
        let step = 0.05;
        let mut inside = 0usize;
        let mut lengths = Vec::new();
        while lengths.len() < 300 {
            s = step_bouncing_ring(s, 1.0, step, &r, &mut rng).0;
            if s.position.0.hypot(s.position.1) < inner {
                inside += 1;
            } else if inside > 0 {
                lengths.push(inside as f64 * step);
                inside = 0;
            }
        }
        let exact = ring_crossing_chords(200.0, inner, 20_000, 9);
        let mut sorted = exact.clone();
        sorted.sort_by(f64::total_cmp);
        let cdf = |x: f64| sorted.partition_point(|v| *v <= x) as f64 / sorted.len() as f64;
        assert!(ks_statistic(&lengths, cdf) < 0.1);
    }

    #[test]
    fn equal_radius_legs_follow_the_endpoint_angle_law() {
        let chords = ring_crossing_chords(21.7, 21.7 * (1.0 - 1e-12), 100_000, 5);
        let ks = ks_statistic(&chords, |l| ChordModel::EndpointAngle.cdf(l, 21.7));
        assert!(ks < 0.01, "ks {ks}");
    }
}
