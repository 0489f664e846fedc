//! Logic configurations and their readout error probabilities.
//!
//! Voltages are in thermal units (`sigma_th = sqrt(KT / C_meas) = 1`).
//! MBL states are `N(0, sigma0^2)` and `N(mu, sigma1^2)` read by a one-sided
//! threshold; VBL states are zero-mean `N(0, sigma0^2)` and `N(0, sigma1^2)`
//! read as `1` when `|x| > v_th`.

use crate::special::erfc_finite;
use crate::{Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;

/// Boltzmann constant in J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Thermal environment and sampling of the measurement node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup {
    temperature: f64,
    c_meas: f64,
    f_c: f64,
}

impl MeasurementSetup {
    pub fn new(temperature: f64, c_meas: f64, f_c: f64) -> Result<Self> {
        for (name, v) in [("temperature", temperature), ("c_meas", c_meas), ("f_c", f_c)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self {
            temperature,
            c_meas,
            f_c,
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn c_meas(&self) -> f64 {
        self.c_meas
    }

    pub fn f_c(&self) -> f64 {
        self.f_c
    }

    /// Thermal energy `K T` in joules.
    pub fn kt(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    /// Thermal noise variance on the measurement capacitor, V^2.
    pub fn thermal_variance(&self) -> f64 {
        self.kt() / self.c_meas
    }

    /// One thermal unit in volts.
    pub fn sigma_th(&self) -> f64 {
        self.thermal_variance().sqrt()
    }

    pub fn to_volts(&self, thermal_units: f64) -> f64 {
        thermal_units * self.sigma_th()
    }
}

impl Default for MeasurementSetup {
    /// 300 K, 1 fF, 1 MHz.
    fn default() -> Self {
        Self {
            temperature: 300.0,
            c_meas: 1e-15,
            f_c: 1e6,
        }
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(format!("{name} must be finite, got {v}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    check_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(format!("{name} must be positive, got {v}")))
    }
}

/// Mean-based logic: state 0 at mean 0, state 1 at mean `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MblParams {
    mu: f64,
    sigma0: f64,
    sigma1: f64,
    v_th: f64,
}

impl MblParams {
    pub fn new(mu: f64, sigma0: f64, sigma1: f64, v_th: f64) -> Result<Self> {
        check_finite("mu", mu)?;
        if mu < 0.0 {
            return Err(Error::config(format!("mu must be non-negative, got {mu}")));
        }
        check_positive("sigma0", sigma0)?;
        check_positive("sigma1", sigma1)?;
        check_finite("v_th", v_th)?;
        Ok(Self {
            mu,
            sigma0,
            sigma1,
            v_th,
        })
    }

    /// Thermal-limited symmetric configuration: `sigma0 = sigma1 = 1`, `v_th = mu / 2`.
    pub fn thermal_midpoint(mu: f64) -> Result<Self> {
        Self::new(mu, 1.0, 1.0, 0.5 * mu)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }
    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }
    pub fn v_th(&self) -> f64 {
        self.v_th
    }
}

/// Variance-based logic: both states zero-mean, state 1 has the larger spread.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VblParams {
    sigma0: f64,
    sigma1: f64,
    v_th: f64,
}

impl VblParams {
    pub fn new(sigma0: f64, sigma1: f64, v_th: f64) -> Result<Self> {
        check_positive("sigma0", sigma0)?;
        check_positive("sigma1", sigma1)?;
        if sigma1 < sigma0 {
            return Err(Error::config(format!(
                "VBL requires sigma1 >= sigma0, got sigma0={sigma0}, sigma1={sigma1}"
            )));
        }
        check_finite("v_th", v_th)?;
        if v_th < 0.0 {
            return Err(Error::config(format!("v_th must be non-negative, got {v_th}")));
        }
        Ok(Self { sigma0, sigma1, v_th })
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }
    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }
    pub fn v_th(&self) -> f64 {
        self.v_th
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicFamily {
    Mbl,
    Vbl,
}

impl LogicFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            LogicFamily::Mbl => "mbl",
            LogicFamily::Vbl => "vbl",
        }
    }
}

impl std::fmt::Display for LogicFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for LogicFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mbl" => Ok(LogicFamily::Mbl),
            "vbl" => Ok(LogicFamily::Vbl),
            other => Err(Error::config(format!(
                "unknown logic family `{other}` (expected mbl or vbl)"
            ))),
        }
    }
}

/// Either logic family, for code that treats both uniformly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Logic {
    Mbl(MblParams),
    Vbl(VblParams),
}

impl Logic {
    pub fn family(&self) -> LogicFamily {
        match self {
            Logic::Mbl(_) => LogicFamily::Mbl,
            Logic::Vbl(_) => LogicFamily::Vbl,
        }
    }

    pub fn conditional_errors(&self) -> ErrorPair {
        match self {
            Logic::Mbl(p) => mbl_conditional_errors(p),
            Logic::Vbl(p) => vbl_conditional_errors(p),
        }
    }

    /// Readout rule: `true` means the measured sample is declared logic 1.
    pub fn reads_one(&self, x: f64) -> bool {
        match self {
            Logic::Mbl(p) => x > p.v_th,
            Logic::Vbl(p) => x.abs() > p.v_th,
        }
    }

    /// `(mean, sigma)` of the conditional distribution for `state`.
    pub fn state_distribution(&self, state: bool) -> (f64, f64) {
        match (self, state) {
            (Logic::Mbl(p), false) => (0.0, p.sigma0),
            (Logic::Mbl(p), true) => (p.mu, p.sigma1),
            (Logic::Vbl(p), false) => (0.0, p.sigma0),
            (Logic::Vbl(p), true) => (0.0, p.sigma1),
        }
    }
}

/// Conditional readout error probabilities of a binary channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPair {
    /// Probability of reading 1 when 0 was stored.
    pub p_1_given_0: f64,
    /// Probability of reading 0 when 1 was stored.
    pub p_0_given_1: f64,
}

impl ErrorPair {
    pub fn new(p_1_given_0: f64, p_0_given_1: f64) -> Result<Self> {
        for (name, p) in [("p_1_given_0", p_1_given_0), ("p_0_given_1", p_0_given_1)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        Ok(Self {
            p_1_given_0,
            p_0_given_1,
        })
    }

    pub fn p_0_given_0(&self) -> f64 {
        1.0 - self.p_1_given_0
    }

    pub fn p_1_given_1(&self) -> f64 {
        1.0 - self.p_0_given_1
    }
}

/// A-priori state probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    pub p0: f64,
    pub p1: f64,
}

impl Priors {
    pub const EQUAL: Priors = Priors { p0: 0.5, p1: 0.5 };

    pub fn new(p0: f64, p1: f64) -> Result<Self> {
        if !(p0 >= 0.0 && p1 >= 0.0) || (p0 + p1 - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "priors must be non-negative and sum to 1, got ({p0}, {p1})"
            )));
        }
        Ok(Self { p0, p1 })
    }
}

impl Default for Priors {
    fn default() -> Self {
        Self::EQUAL
    }
}

pub fn mbl_conditional_errors(params: &MblParams) -> ErrorPair {
    ErrorPair {
        p_1_given_0: 0.5 * erfc_finite(params.v_th * FRAC_1_SQRT_2 / params.sigma0),
        p_0_given_1: 0.5 * erfc_finite((params.mu - params.v_th) * FRAC_1_SQRT_2 / params.sigma1),
    }
}

pub fn vbl_conditional_errors(params: &VblParams) -> ErrorPair {
    ErrorPair {
        p_1_given_0: erfc_finite(params.v_th * FRAC_1_SQRT_2 / params.sigma0),
        p_0_given_1: 1.0 - erfc_finite(params.v_th * FRAC_1_SQRT_2 / params.sigma1),
    }
}

/// Prior-weighted probability of a readout error.
pub fn average_error(priors: &Priors, errors: &ErrorPair) -> f64 {
    priors.p0 * errors.p_1_given_0 + priors.p1 * errors.p_0_given_1
}
