//! Link-level simulator for NB-IoT service from a low-earth-orbit satellite.
//!
//! Given an orbit, a carrier and a pass geometry, the crate produces the
//! quantities that decide whether a narrowband IoT terminal can use a
//! satellite cell: Doppler offset and rate, propagation delay and delay
//! rate, the received SNR budget for the downlink and every uplink
//! allocation width, achievable rates against simulated MCS requirements,
//! synchronization windows, random-access repetition needs, pre-compensation
//! schedules and paging plans across coverage gaps. A tapped-delay-line
//! Rician channel generator backs the fading statistics.
//!
//! Everything is deterministic for a fixed config and seed.
//!
//! The `examples/` directory holds one runnable example per capability; the
//! `leolink` binary exposes the same runs as subcommands writing CSV series.
//!
//! ```
//! use leolink::geometry::{pass_geometry, EarthModel, PassScenario};
//! use leolink::doppler::doppler_profile;
//!
//! let pass = pass_geometry(&PassScenario::default(), &EarthModel::default()).unwrap();
//! let doppler = doppler_profile(&pass, 2.0e9).unwrap();
//! let peak = doppler.iter().map(|d| d.offset_hz.abs()).fold(0.0, f64::max);
//! assert!(peak > 41_000.0 && peak < 45_000.0);
//! ```

pub mod access;
pub mod cli;
pub mod config;
pub mod doppler;
pub mod error;
pub mod fading;
pub mod geometry;
pub mod link_budget;
pub mod phy;
pub mod report;

pub use error::{Error, Result};
