//! Radio-level trace simulation that produces handover offset histograms.

pub mod config;
pub mod filter;
pub mod mobility;
pub mod shadowing;
pub mod sim;

pub use config::{FadingCase, RadioConfig};
pub use filter::{l1_filter, l3_filter};
pub use mobility::{ring_crossing_chords, step_bouncing_ring, Cell, Ring, UeState};
pub use sim::{
    extract_offset_histogram, filter_lag, run_trace, run_trace_in, run_trace_until, Environment, EventLog, HfEvent, Resolution,
    TriggerEvent, MIN_TRIGGERS,
};
