//! Thermal-noise limits of mean-based (MBL) and variance-based (VBL) logic.
//!
//! All core math works in thermal units: voltages are multiples of
//! `sigma_th = sqrt(KT / C_meas)`, energies are multiples of `KT`, and rates
//! are per measurement. [`logic::MeasurementSetup`] converts to physical units.
//!
//! The pipeline is
//! [`logic`] (error probabilities) → [`channel`] (information rate) →
//! [`energy`] (power and energy per bit), with [`sweep`] and [`hybrid`]
//! driving it over parameter ranges and [`montecarlo`] providing an
//! independent stochastic check of every analytic quantity.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod energy;
mod error;
pub mod hybrid;
pub mod logic;
pub mod montecarlo;
pub mod snr;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
