//! Startup of an energy-scavenging node that runs VBL while its rectified
//! supply is weak and switches to MBL once the mean dominates.
//!
//! Supply dynamics are first order: the rectified mean charges towards
//! `mu_target` with forward-Euler steps of time constant `tau_mu`, and the
//! logic-1 spread settles exponentially from `sigma_ambient` to `sigma_floor`
//! with time constant `tau_sigma`. At every step the logic is chosen per
//! [`SwitchRule`]; there is no hysteresis.

use crate::logic::{
    average_error, mbl_conditional_errors, vbl_conditional_errors, LogicFamily, MblParams, Priors, VblParams,
};
use crate::snr::{choose_logic, SnrModel};
use crate::sweep::{Axis, TransitionConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchRule {
    /// Larger of the sample-mean and sample-variance SNR, ties to VBL.
    Snr,
    /// VBL while `mu <= factor * sigma1`, MBL above (`factor = sqrt 2` is the
    /// rule of thumb quoted for hybrid logic).
    MeanOverSigma(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridConfig {
    pub mu_target: f64,
    /// Seconds.
    pub tau_mu: f64,
    pub sigma_ambient: f64,
    pub sigma_floor: f64,
    /// Seconds.
    pub tau_sigma: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Samples per SNR decision.
    pub n_snr: u64,
    pub kurtosis: f64,
    /// VBL threshold in multiples of `sigma_floor`.
    pub vbl_threshold: f64,
    pub switch_rule: SwitchRule,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            mu_target: 2.0,
            tau_mu: 1e-3,
            sigma_ambient: 4.0,
            sigma_floor: 1.0,
            tau_sigma: 1e-3,
            dt: 1e-5,
            t_end: 1e-2,
            n_snr: 11,
            kurtosis: 0.0,
            vbl_threshold: 2.0,
            switch_rule: SwitchRule::Snr,
        }
    }
}

impl HybridConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tau_mu", self.tau_mu),
            ("tau_sigma", self.tau_sigma),
            ("dt", self.dt),
            ("t_end", self.t_end),
            ("sigma_floor", self.sigma_floor),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.dt < self.tau_mu / 10.0) {
            return Err(Error::config(format!(
                "dt must be below tau_mu/10, got dt={} tau_mu={}",
                self.dt, self.tau_mu
            )));
        }
        if !(self.sigma_floor <= self.sigma_ambient) || !self.sigma_ambient.is_finite() {
            return Err(Error::config("sigma_floor must not exceed sigma_ambient"));
        }
        if !(self.mu_target >= 0.0) || !self.mu_target.is_finite() {
            return Err(Error::config(format!(
                "mu_target must be non-negative, got {}",
                self.mu_target
            )));
        }
        if self.n_snr < 2 {
            return Err(Error::config("n_snr must be at least 2"));
        }
        if !(self.vbl_threshold >= 0.0) || !self.kurtosis.is_finite() {
            return Err(Error::config("vbl_threshold must be non-negative and kurtosis finite"));
        }
        if let SwitchRule::MeanOverSigma(f) = self.switch_rule {
            if !(f > 0.0) || !f.is_finite() {
                return Err(Error::config(format!("switch factor must be positive, got {f}")));
            }
        }
        Ok(())
    }

    /// MBL threshold `mu_target / 2` and VBL threshold `vbl_threshold * sigma_floor`
    /// at the final supply mean, as used by [`reliability_profile`].
    pub fn transition_config(&self, sigma1_range: (f64, f64)) -> TransitionConfig {
        TransitionConfig {
            mu: self.mu_target,
            sigma0: self.sigma_floor,
            v_th_mbl: 0.5 * self.mu_target,
            v_th_vbl: self.vbl_threshold * self.sigma_floor,
            sigma1_range,
        }
    }

    fn p_avg(&self, family: LogicFamily, mu: f64, sigma1: f64) -> Result<f64> {
        let errors = match family {
            LogicFamily::Mbl => mbl_conditional_errors(&MblParams::new(mu, self.sigma_floor, sigma1, 0.5 * mu)?),
            LogicFamily::Vbl => vbl_conditional_errors(&VblParams::new(
                self.sigma_floor,
                sigma1,
                self.vbl_threshold * self.sigma_floor,
            )?),
        };
        Ok(average_error(&Priors::EQUAL, &errors))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridRow {
    pub t: f64,
    pub mu: f64,
    pub sigma1: f64,
    pub snr_mbl: f64,
    pub snr_vbl: f64,
    pub choice: LogicFamily,
    /// Average error of the chosen logic.
    pub p_avg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridTrace {
    pub config: HybridConfig,
    pub rows: Vec<HybridRow>,
}

impl HybridTrace {
    /// `(time, new logic)` for every change of logic.
    pub fn switches(&self) -> Vec<(f64, LogicFamily)> {
        self.rows
            .windows(2)
            .filter(|w| w[0].choice != w[1].choice)
            .map(|w| (w[1].t, w[1].choice))
            .collect()
    }

    /// Time of the first row running MBL.
    pub fn switch_time(&self) -> Option<f64> {
        self.rows.iter().find(|r| r.choice == LogicFamily::Mbl).map(|r| r.t)
    }
}

pub fn simulate_startup(config: &HybridConfig) -> Result<HybridTrace> {
    config.validate()?;
    let steps = (config.t_end / config.dt).round() as usize;
    let decay = (-config.dt / config.tau_sigma).exp();
    let gain = config.dt / config.tau_mu;

    let mut rows = Vec::with_capacity(steps + 1);
    let mut mu = 0.0f64;
    let mut sigma1 = config.sigma_ambient;
    for k in 0..=steps {
        let c = choose_logic(&SnrModel::new(config.n_snr, mu, sigma1, config.kurtosis)?)?;
        let choice = match config.switch_rule {
            SwitchRule::Snr => c.choice,
            SwitchRule::MeanOverSigma(f) if mu <= f * sigma1 => LogicFamily::Vbl,
            SwitchRule::MeanOverSigma(_) => LogicFamily::Mbl,
        };
        rows.push(HybridRow {
            t: k as f64 * config.dt,
            mu,
            sigma1,
            snr_mbl: c.snr_mbl,
            snr_vbl: c.snr_vbl,
            choice,
            p_avg: config.p_avg(choice, mu, sigma1)?,
        });
        mu = (mu + gain * (config.mu_target - mu)).min(config.mu_target);
        sigma1 = (config.sigma_floor + (sigma1 - config.sigma_floor) * decay).max(config.sigma_floor);
    }
    Ok(HybridTrace { config: *config, rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityRow {
    pub sigma1: f64,
    pub p_avg_mbl: f64,
    pub p_avg_vbl: f64,
    /// Logic with the lower `p_avg`; ties go to VBL.
    pub better: LogicFamily,
}

/// MBL and VBL average error across `sigma1_grid` at the configuration's
/// final supply mean.
pub fn reliability_profile(config: &HybridConfig, sigma1_grid: &Axis) -> Result<Vec<ReliabilityRow>> {
    config.validate()?;
    let tc = config.transition_config((sigma1_grid.min, sigma1_grid.max));
    if sigma1_grid.count < 2 || !(sigma1_grid.min < sigma1_grid.max) {
        return Err(Error::config("sigma1 grid needs at least 2 points and min < max"));
    }
    sigma1_grid
        .values()
        .into_iter()
        .map(|s1| {
            let p_avg_mbl = tc.p_avg_mbl(s1)?;
            let p_avg_vbl = tc.p_avg_vbl(s1)?;
            let better = if p_avg_mbl < p_avg_vbl {
                LogicFamily::Mbl
            } else {
                LogicFamily::Vbl
            };
            Ok(ReliabilityRow {
                sigma1: s1,
                p_avg_mbl,
                p_avg_vbl,
                better,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snr::crossover_mu;
    use crate::sweep::find_transition_point;

    #[test]
    fn zero_target_stays_vbl() {
        let cfg = HybridConfig {
            mu_target: 0.0,
            ..HybridConfig::default()
        };
        let trace = simulate_startup(&cfg).unwrap();
        assert!(trace.rows.iter().all(|r| r.choice == LogicFamily::Vbl));
        assert!(trace.switch_time().is_none());
    }

    #[test]
    fn default_trace_switches_once_at_the_crossover() {
        let cfg = HybridConfig::default();
        let trace = simulate_startup(&cfg).unwrap();
        assert_eq!(trace.switches().len(), 1);
        assert_eq!(trace.switches()[0].1, LogicFamily::Mbl);
        let idx = trace.rows.iter().position(|r| r.choice == LogicFamily::Mbl).unwrap();
        for (i, r) in trace.rows.iter().enumerate() {
            let above = r.mu > crossover_mu(cfg.n_snr, r.sigma1, cfg.kurtosis).unwrap();
            // Rounding can only disagree within a relative 1e-12 band of the boundary.
            let boundary = crossover_mu(cfg.n_snr, r.sigma1, cfg.kurtosis).unwrap();
            if (r.mu - boundary).abs() > 1e-12 * boundary {
                assert_eq!(above, i >= idx, "step {i}");
            }
        }
    }

    #[test]
    fn trajectories_are_monotone_and_bounded() {
        let cfg = HybridConfig::default();
        let trace = simulate_startup(&cfg).unwrap();
        for w in trace.rows.windows(2) {
            assert!(w[1].t > w[0].t);
            assert!(w[1].mu >= w[0].mu && w[1].mu <= cfg.mu_target);
            assert!(w[1].sigma1 <= w[0].sigma1 && w[1].sigma1 >= cfg.sigma_floor);
        }
        let last = trace.rows.last().unwrap();
        assert!((last.t - cfg.t_end).abs() < 1e-12);
    }

    #[test]
    fn recorded_choice_is_consistent_with_snrs() {
        for r in simulate_startup(&HybridConfig::default()).unwrap().rows {
            let expected = if r.snr_mbl > r.snr_vbl {
                LogicFamily::Mbl
            } else {
                LogicFamily::Vbl
            };
            assert_eq!(r.choice, expected);
        }
    }

    #[test]
    fn switch_time_converges_with_dt() {
        let cfg = HybridConfig::default();
        let coarse = simulate_startup(&cfg).unwrap().switch_time().unwrap();
        let fine = simulate_startup(&HybridConfig {
            dt: cfg.dt / 2.0,
            ..cfg
        })
        .unwrap()
        .switch_time()
        .unwrap();
        assert!((coarse - fine).abs() < cfg.dt, "{coarse} vs {fine}");
    }

    #[test]
    fn mean_over_sigma_override() {
        let cfg = HybridConfig {
            switch_rule: SwitchRule::MeanOverSigma(2f64.sqrt()),
            ..HybridConfig::default()
        };
        let trace = simulate_startup(&cfg).unwrap();
        let t_sqrt2 = trace.switch_time().unwrap();
        for r in &trace.rows {
            assert_eq!(r.choice == LogicFamily::Mbl, r.mu > 2f64.sqrt() * r.sigma1);
        }
        // The sqrt(2) rule demands a larger mean than the SNR boundary, so it switches later.
        let t_snr = simulate_startup(&HybridConfig::default())
            .unwrap()
            .switch_time()
            .unwrap();
        assert!(t_sqrt2 > t_snr);
    }

    #[test]
    fn invalid_configs() {
        let d = HybridConfig::default();
        for cfg in [
            HybridConfig {
                dt: d.tau_mu / 5.0,
                ..d
            },
            HybridConfig { tau_sigma: 0.0, ..d },
            HybridConfig { sigma_floor: 5.0, ..d },
            HybridConfig { mu_target: -1.0, ..d },
            HybridConfig { n_snr: 1, ..d },
            HybridConfig {
                switch_rule: SwitchRule::MeanOverSigma(0.0),
                ..d
            },
        ] {
            assert!(matches!(simulate_startup(&cfg), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn reliability_profile_crossing() {
        let cfg = HybridConfig::default();
        let grid = Axis::linear(1.0, 5.0, 81);
        let rows = reliability_profile(&cfg, &grid).unwrap();
        assert_eq!(rows[0].p_avg_vbl, 0.5);
        let changes: Vec<_> = rows.windows(2).filter(|w| w[0].better != w[1].better).collect();
        assert_eq!(changes.len(), 1);
        let star = find_transition_point(&cfg.transition_config((1.0, 5.0))).unwrap();
        assert!(changes[0][0].sigma1 <= star && star <= changes[0][1].sigma1);
        // Large spreads make the VBL high-variance state easy to detect.
        assert_eq!(rows.last().unwrap().better, LogicFamily::Vbl);
    }
}
