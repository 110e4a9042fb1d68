//! # drn-core
//!
//! Seeded Monte Carlo simulator for a UAV-served uplink network with underlaid
//! D2D pairs that may power their transmissions by harvesting energy from
//! nearby cellular users.
//!
//! The crate is organised around one realization ("trial") of the network:
//!
//! 1. [`geometry`] samples Poisson point process deployments on a disk and
//!    materializes per-link Rayleigh fading draws.
//! 2. [`channel`] evaluates the two channel families: ground-to-ground
//!    (fading times power-law path loss) and ground-to-air (probabilistic
//!    line-of-sight mixture).
//! 3. [`energy`] runs the power-splitting nonlinear harvesting chain that
//!    turns incident cellular power into a D2D transmit power.
//! 4. [`metrics`] computes interference aggregates, SINRs, per-user rates and
//!    the per-band / network energy efficiency.
//! 5. [`monte_carlo`] repeats trials and aggregates statistics, and
//!    [`experiments`] layers parameter sweeps and an altitude solver on top.
//!
//! Everything is a pure function of `(SimConfig, seed, trial index)`; the
//! crate performs no IO and is `no_std`-compatible (with `alloc`). The `cli`
//! companion crate adds file formats, a command-line front end and a parallel
//! trial runner.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod channel;
pub mod config;
pub mod energy;
pub mod errors;
pub mod experiments;
pub mod geometry;
mod math;
pub mod metrics;
pub mod monte_carlo;
pub mod rng;
pub mod stats;

pub use config::SimConfig;
pub use energy::Scenario;
pub use geometry::Deployment;
pub use metrics::{BandMetrics, TotalMetrics, TrialMetrics};
pub use monte_carlo::{ScenarioResult, TrialPlan};
pub use experiments::{SweepResult, SweepSpec};
