//! Optimal transmit-power profiles and ergodic capacity of a spectrum-sharing
//! link whose transmitter knows its own channel but sees the cross link to
//! the primary receiver only through a noisy estimate.
//!
//! The library computes, for Rayleigh fading:
//!
//! - the peak transmit-power cap induced by an interference-outage or
//!   signal-to-interference-outage constraint, per cross-link estimate;
//! - the optimal water-filling power profile under an average or peak
//!   transmit-power budget, including the threshold equation that pins the
//!   water level;
//! - the ergodic capacity by nested quadrature, with closed forms in the
//!   no-CSI limit and asymptotic limits at high power;
//! - a seeded Monte Carlo simulator that independently verifies average
//!   power, outage rates, and rate estimates against the analytic results.
//!
//! The `cli` module and the `sscap` binary drive all of this from flat
//! key-value configuration files and emit CSV sweeps.

pub mod capacity;
pub mod cli;
pub mod error;
pub mod fading;
pub mod numerics;
pub mod policy;
pub mod simulate;

pub use error::{Error, Result};
