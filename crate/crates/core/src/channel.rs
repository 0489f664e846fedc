//! Information rates of the binary readout channel.
//!
//! Two per-sample quantities are always reported side by side:
//!
//! * the *nominal capacity* `1 + sum p(x) sum p(y|x) log2 p(y|x) = 1 - H(Y|X)`,
//!   the binary-asymmetric-channel expression used for the energy figures;
//! * the *true mutual information* `I(X;Y) = H(Y) - H(Y|X)`.
//!
//! They coincide when the output distribution is uniform (e.g. a symmetric
//! channel with equal priors). For skewed channels the nominal capacity is
//! larger, sometimes by orders of magnitude.

use crate::logic::{ErrorPair, Priors};
use crate::special::entropy_bits;
use crate::{Error, Result};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRates {
    /// Nominal capacity, bits per second.
    pub capacity_nominal: f64,
    /// True mutual information, bits per second.
    pub mutual_info_true: f64,
    pub per_sample_capacity_nominal: f64,
    pub per_sample_mi_true: f64,
}

/// Small-signal capacity of the symmetric channel near `p_avg = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityApprox {
    /// `p_avg - 1/2`.
    pub delta_p: f64,
    pub capacity_bits_per_sample: f64,
}

impl CapacityApprox {
    pub fn new(delta_p: f64) -> Result<Self> {
        if !(delta_p.abs() <= 0.5) {
            return Err(Error::domain(format!("|delta_p| must be at most 0.5, got {delta_p}")));
        }
        Ok(Self {
            delta_p,
            capacity_bits_per_sample: taylor_bits(delta_p),
        })
    }
}

fn conditional_entropy_bits(errors: &ErrorPair, priors: &Priors) -> f64 {
    priors.p1 * entropy_bits(errors.p_0_given_1) + priors.p0 * entropy_bits(errors.p_1_given_0)
}

/// Nominal capacity in bits per measurement, clamped to `[0, 1]`.
pub fn nominal_capacity_bits(errors: &ErrorPair, priors: &Priors) -> f64 {
    (1.0 - conditional_entropy_bits(errors, priors)).clamp(0.0, 1.0)
}

/// `I(X;Y)` in bits per measurement, clamped to `[0, 1]`.
pub fn mutual_information_true(errors: &ErrorPair, priors: &Priors) -> f64 {
    let p_read_one = priors.p1 * errors.p_1_given_1() + priors.p0 * errors.p_1_given_0;
    let output_entropy = entropy_bits(p_read_one).min(1.0);
    (output_entropy - conditional_entropy_bits(errors, priors)).clamp(0.0, 1.0)
}

pub fn capacity_asymmetric(errors: &ErrorPair, priors: &Priors, f_c: f64) -> ChannelRates {
    let per_sample_capacity_nominal = nominal_capacity_bits(errors, priors);
    let per_sample_mi_true = mutual_information_true(errors, priors);
    ChannelRates {
        capacity_nominal: f_c * per_sample_capacity_nominal,
        mutual_info_true: f_c * per_sample_mi_true,
        per_sample_capacity_nominal,
        per_sample_mi_true,
    }
}

/// Binary symmetric channel capacity `f_c (1 - H_b(p))`.
pub fn capacity_bsc(p: f64, f_c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!(
            "crossover probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(f_c * (1.0 - entropy_bits(p)).clamp(0.0, 1.0))
}

fn taylor_bits(delta_p: f64) -> f64 {
    2.0 / LN_2 * delta_p * delta_p
}

/// Second-order expansion of the BSC capacity about `p = 1/2`.
pub fn capacity_taylor(delta_p: f64, f_c: f64) -> f64 {
    f_c * taylor_bits(delta_p)
}

/// Deviation of `p_avg` from `1/2` for thermal-limited MBL with `v_th = mu/2`,
/// linearised as `g(0) mu / 2` with `sigma = 1`.
pub fn delta_p_mbl(mu: f64) -> f64 {
    mu / (2.0 * (2.0 * PI).sqrt())
}

/// [`delta_p_mbl`] with `mu` in volts and the thermal variance taken from `setup`.
pub fn delta_p_mbl_volts(mu_volts: f64, setup: &crate::logic::MeasurementSetup) -> f64 {
    mu_volts / (2.0 * (2.0 * PI * setup.thermal_variance()).sqrt())
}

/// Small-signal MBL capacity `f_c mu^2 / (4 pi ln 2)`, `mu` in thermal units.
pub fn capacity_mbl_small_signal(mu: f64, f_c: f64) -> f64 {
    f_c * mu * mu / (4.0 * PI * LN_2)
}

/// [`capacity_mbl_small_signal`] with `mu` in volts.
pub fn capacity_mbl_small_signal_volts(mu_volts: f64, setup: &crate::logic::MeasurementSetup) -> f64 {
    setup.f_c() * mu_volts * mu_volts / (4.0 * PI * LN_2 * setup.thermal_variance())
}
