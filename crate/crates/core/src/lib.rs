//! Handover failure, no-handover and ping-pong probabilities for a pico cell
//! embedded in a macro cell.
//!
//! The geometric model treats the pico coverage area and the two failure
//! boundaries as concentric circles crossed by straight chords. Probabilities
//! are available in closed form ([`analytic`]), against an empirical offset
//! histogram ([`semi_analytic`]) and by simulation ([`monte_carlo`]). The
//! [`trace`] module produces offset histograms from a radio-level simulation.

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod monte_carlo;
pub mod offset;
pub mod presets;
pub mod quadrature;
pub mod semi_analytic;
pub mod stats;
pub mod sweep;
pub mod trace;

pub use error::{Error, Result};
pub use geometry::{CellGeometry, ChordModel, MobilityConfig};
pub use offset::{Histogram, OffsetDistribution};
