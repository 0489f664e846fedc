//! Measurement SNR of the sample mean (MBL) and sample variance (VBL).
//!
//! `kurtosis_excess` is the fourth standardized moment minus 3, so Gaussian
//! data has `kurtosis_excess = 0` and the variance of the sample variance
//! reduces to the classical `2 sigma^4 / (N - 1)`.
//!
//! The MBL/VBL boundary follows directly from equating the two SNR models:
//! `N mu^2 / sigma^2 = SNR_VBL`, i.e. `mu* = sigma * sqrt(SNR_VBL / N)`,
//! which tends to `sigma / sqrt(2)` for large Gaussian `N`.

use crate::logic::LogicFamily;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrModel {
    n: u64,
    mu: f64,
    sigma: f64,
    kurtosis_excess: f64,
}

impl SnrModel {
    pub fn new(n: u64, mu: f64, sigma: f64, kurtosis_excess: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::config(format!("sample count must be at least 2, got {n}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::config(format!("sigma must be positive, got {sigma}")));
        }
        if !mu.is_finite() || !kurtosis_excess.is_finite() {
            return Err(Error::config("mu and kurtosis must be finite"));
        }
        Ok(Self {
            n,
            mu,
            sigma,
            kurtosis_excess,
        })
    }

    pub fn gaussian(n: u64, mu: f64, sigma: f64) -> Result<Self> {
        Self::new(n, mu, sigma, 0.0)
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn kurtosis_excess(&self) -> f64 {
        self.kurtosis_excess
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicChoice {
    pub choice: LogicFamily,
    pub snr_mbl: f64,
    pub snr_vbl: f64,
}

pub fn snr_mbl(model: &SnrModel) -> f64 {
    model.n as f64 * model.mu * model.mu / (model.sigma * model.sigma)
}

/// `2/(n-1) + kappa/n`; the variance of the sample variance is this times `sigma^4`.
fn variance_factor(n: u64, kurtosis_excess: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("sample count must be at least 2, got {n}")));
    }
    let n = n as f64;
    let factor = 2.0 / (n - 1.0) + kurtosis_excess / n;
    if !(factor > 0.0) {
        return Err(Error::domain(format!(
            "kurtosis {kurtosis_excess} gives a non-positive sample-variance variance at n={n}"
        )));
    }
    Ok(factor)
}

/// `E[(s^2 - sigma^2)^2] = sigma^4 (2/(n-1) + kappa/n)`.
pub fn var_of_sample_variance(sigma: f64, n: u64, kurtosis_excess: f64) -> Result<f64> {
    Ok(sigma.powi(4) * variance_factor(n, kurtosis_excess)?)
}

pub fn snr_vbl(n: u64, kurtosis_excess: f64) -> Result<f64> {
    Ok(1.0 / variance_factor(n, kurtosis_excess)?)
}

/// Picks the logic with the larger measurement SNR; ties go to VBL.
pub fn choose_logic(model: &SnrModel) -> Result<LogicChoice> {
    let snr_mbl = snr_mbl(model);
    let snr_vbl = snr_vbl(model.n, model.kurtosis_excess)?;
    let choice = if snr_mbl > snr_vbl {
        LogicFamily::Mbl
    } else {
        LogicFamily::Vbl
    };
    Ok(LogicChoice {
        choice,
        snr_mbl,
        snr_vbl,
    })
}

/// Mean at which both SNR models are equal.
pub fn crossover_mu(n: u64, sigma: f64, kurtosis_excess: f64) -> Result<f64> {
    Ok(sigma * (snr_vbl(n, kurtosis_excess)? / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mbl_snr_examples() {
        assert_eq!(snr_mbl(&SnrModel::gaussian(10, 0.0, 1.0).unwrap()), 0.0);
        assert_eq!(snr_mbl(&SnrModel::gaussian(10, 1.0, 1.0).unwrap()), 10.0);
        assert_eq!(snr_mbl(&SnrModel::gaussian(100, 0.5, 2.0).unwrap()), 6.25);
    }

    #[test]
    fn variance_of_variance_examples() {
        assert!((var_of_sample_variance(1.0, 11, 0.0).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(var_of_sample_variance(2.0, 2, 0.0).unwrap(), 32.0);
        let v = var_of_sample_variance(1.0, 10, -1.2).unwrap();
        assert!((v - 0.102_222_222_222_222_22).abs() < 1e-15);
        assert!(var_of_sample_variance(1.0, 10, -3.0).is_err());
        assert!(var_of_sample_variance(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn vbl_snr_examples() {
        assert!((snr_vbl(11, 0.0).unwrap() - 5.0).abs() < 1e-15);
        assert!((snr_vbl(3, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((snr_vbl(10, 3.0).unwrap() - 1.914_893_617_021_276_6).abs() < 1e-14);
        assert!(snr_vbl(4, -3.0).is_err());
    }

    #[test]
    fn choice_examples() {
        let c = choose_logic(&SnrModel::gaussian(11, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!((c.choice, c.snr_mbl), (LogicFamily::Vbl, 0.0));
        let c = choose_logic(&SnrModel::gaussian(11, 10.0, 1.0).unwrap()).unwrap();
        assert_eq!(c.choice, LogicFamily::Mbl);
        assert!((c.snr_mbl - 1100.0).abs() < 1e-9);

        let boundary = (10.0f64 / 22.0).sqrt();
        let c = choose_logic(&SnrModel::gaussian(11, boundary, 1.0).unwrap()).unwrap();
        assert!((c.snr_mbl - c.snr_vbl).abs() < 1e-12);
        let above = choose_logic(&SnrModel::gaussian(11, boundary * (1.0 + 1e-9), 1.0).unwrap()).unwrap();
        assert_eq!(above.choice, LogicFamily::Mbl);
    }

    #[test]
    fn exact_tie_goes_to_vbl() {
        // n = 2 gives SNR_VBL = 0.5 and mu = 0.5 gives SNR_MBL = 0.5, both exact.
        let c = choose_logic(&SnrModel::gaussian(2, 0.5, 1.0).unwrap()).unwrap();
        assert_eq!(c.snr_mbl, c.snr_vbl);
        assert_eq!(c.choice, LogicFamily::Vbl);
    }

    #[test]
    fn crossover_examples() {
        assert!((crossover_mu(11, 1.0, 0.0).unwrap() - 0.674_199_862_463_242).abs() < 1e-12);
        assert!((crossover_mu(3, 2.0, 0.0).unwrap() - 1.154_700_538_379_251_5).abs() < 1e-12);
        let large = crossover_mu(10_000_000, 1.0, 0.0).unwrap();
        assert!((large - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7);
    }

    #[test]
    fn crossover_matches_bisection() {
        // Independent route: bisect snr_mbl - snr_vbl in mu.
        let (n, sigma, k) = (11, 1.0, 0.0);
        let target = snr_vbl(n, k).unwrap();
        let f = |mu: f64| snr_mbl(&SnrModel::new(n, mu, sigma, k).unwrap()) - target;
        let (mut lo, mut hi) = (0.0, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!((0.5 * (lo + hi) - crossover_mu(n, sigma, k).unwrap()).abs() < 1e-12);
    }
}
