//! Power dissipation and energy per bit.
//!
//! Powers carry two values computed along independent paths: a normalized
//! one in units of `KT * f_c` (thermal-unit voltages, `KT = 1`), and one in
//! watts evaluated from physical voltages and capacitance.

use crate::logic::{MblParams, MeasurementSetup, VblParams};
use crate::{Error, Result};
use std::f64::consts::{LN_2, PI};

/// Small-signal lower bound on MBL energy per bit, `2 pi ln 2` KT/bit.
pub const FOM_MBL_LIMIT: f64 = 2.0 * PI * LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Power {
    /// In units of `KT * f_c`.
    pub normalized: f64,
    pub watts: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FomStatus {
    Finite,
    /// Positive power over zero capacity.
    Infinite,
    /// Zero power over zero capacity.
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub power: Power,
    pub fom_kt_per_bit: f64,
    pub fom_joules_per_bit: f64,
    pub status: FomStatus,
}

pub fn power_mbl(params: &MblParams, setup: &MeasurementSetup) -> Power {
    let mu = params.mu();
    let mu_volts = setup.to_volts(mu);
    Power {
        normalized: 0.5 * mu * mu,
        watts: setup.f_c() * 0.5 * setup.c_meas() * mu_volts * mu_volts,
    }
}

pub fn power_vbl(params: &VblParams, setup: &MeasurementSetup) -> Power {
    let (s0, s1) = (params.sigma0(), params.sigma1());
    let (v0, v1) = (setup.to_volts(s0), setup.to_volts(s1));
    Power {
        normalized: s1 * s1 - s0 * s0,
        watts: setup.f_c() * setup.c_meas() * (v1 * v1 - v0 * v0),
    }
}

/// Energy per bit for `power` delivered over a channel carrying
/// `capacity_per_sample` bits per measurement.
pub fn fom(power: Power, capacity_per_sample: f64, setup: &MeasurementSetup) -> EnergyPoint {
    if capacity_per_sample > 0.0 {
        return EnergyPoint {
            power,
            fom_kt_per_bit: power.normalized / capacity_per_sample,
            fom_joules_per_bit: power.watts / (capacity_per_sample * setup.f_c()),
            status: FomStatus::Finite,
        };
    }
    let (value, status) = if power.normalized > 0.0 {
        (f64::INFINITY, FomStatus::Infinite)
    } else {
        (f64::NAN, FomStatus::Undefined)
    };
    EnergyPoint {
        power,
        fom_kt_per_bit: value,
        fom_joules_per_bit: value,
        status,
    }
}

pub fn fom_mbl_fundamental_limit() -> f64 {
    FOM_MBL_LIMIT
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierEnergies {
    /// Barrier height separating the MBL wells, joules.
    pub e1: f64,
    pub e_mbl_per_transition: f64,
}

/// Energy per MBL transition: lowering then restoring the barrier costs `2 E1`.
pub fn mbl_transition_energy(e1: f64) -> Result<BarrierEnergies> {
    if !(e1 >= 0.0) || !e1.is_finite() {
        return Err(Error::domain(format!("barrier height must be non-negative, got {e1}")));
    }
    Ok(BarrierEnergies {
        e1,
        e_mbl_per_transition: 2.0 * e1,
    })
}
