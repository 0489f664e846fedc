//! Seeded Monte Carlo oracles for the analytic models.
//!
//! Work is split into fixed-size units. Unit `i` of purpose `tag` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `tag << 40 | i`, so every
//! unit sees the same numbers no matter which worker runs it. Units are
//! evaluated on the current rayon pool, collected in index order and reduced
//! sequentially, which keeps results bit-identical for any worker count.

use crate::channel::mutual_information_true;
use crate::logic::{Logic, MblParams, Priors, VblParams};
use crate::snr::{snr_vbl, var_of_sample_variance};
use crate::{Error, Result};
use rand::distr::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_160_612;

const UNIT_SIZE: u64 = 1 << 15;

const TAG_STATE0: u64 = 1;
const TAG_STATE1: u64 = 2;
const TAG_CHANNEL: u64 = 3;
const TAG_TRIALS: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean - expected| / std_error`; infinite when the error is zero but the mean is off.
    pub fn z_score(&self, expected: f64) -> f64 {
        let diff = (self.mean - expected).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Zero-mean noise families with known excess kurtosis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseShape {
    Gaussian,
    Uniform,
    Laplace,
}

impl NoiseShape {
    pub fn excess_kurtosis(&self) -> f64 {
        match self {
            NoiseShape::Gaussian => 0.0,
            NoiseShape::Uniform => -1.2,
            NoiseShape::Laplace => 3.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NoiseShape::Gaussian => "gaussian",
            NoiseShape::Uniform => "uniform",
            NoiseShape::Laplace => "laplace",
        }
    }

    /// One draw with mean zero and standard deviation `sigma`.
    ///
    /// Gaussian uses the ziggurat sampler; uniform and Laplace use the inverse CDF.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, sigma: f64) -> f64 {
        match self {
            NoiseShape::Gaussian => {
                let z: f64 = StandardNormal.sample(rng);
                sigma * z
            }
            NoiseShape::Uniform => {
                let u: f64 = Open01.sample(rng);
                sigma * 3f64.sqrt() * (2.0 * u - 1.0)
            }
            NoiseShape::Laplace => {
                let u: f64 = Open01.sample(rng);
                let u = u - 0.5;
                let b = sigma * std::f64::consts::FRAC_1_SQRT_2;
                -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
        }
    }
}

impl std::str::FromStr for NoiseShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "normal" => Ok(NoiseShape::Gaussian),
            "uniform" => Ok(NoiseShape::Uniform),
            "laplace" => Ok(NoiseShape::Laplace),
            other => Err(Error::config(format!("unknown noise shape `{other}`"))),
        }
    }
}

fn unit_rng(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 40) | index);
    rng
}

/// Runs `work(rng, count)` over `total` items split into units, in unit order.
fn run_units<T, F>(total: u64, seed: u64, tag: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let units = total.div_ceil(UNIT_SIZE);
    (0..units)
        .into_par_iter()
        .map(|i| {
            let count = UNIT_SIZE.min(total - i * UNIT_SIZE);
            work(&mut unit_rng(seed, tag, i), count)
        })
        .collect()
}

fn binomial_estimate(hits: u64, trials: u64, seed: u64) -> McEstimate {
    let p = hits as f64 / trials as f64;
    McEstimate {
        mean: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        n_samples: trials,
        seed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalErrors {
    pub p_1_given_0: McEstimate,
    pub p_0_given_1: McEstimate,
    /// Equal-prior average of the two conditional estimates.
    pub p_avg: McEstimate,
}

/// Empirical conditional error rates: `n_samples / 2` draws from each state.
pub fn empirical_error_rates(logic: &Logic, n_samples: u64, seed: u64) -> Result<EmpiricalErrors> {
    if n_samples < 1_000 {
        return Err(Error::domain(format!("need at least 1000 samples, got {n_samples}")));
    }
    let per_state = n_samples / 2;
    let count_errors = |state: bool, tag: u64| -> u64 {
        let (mean, sigma) = logic.state_distribution(state);
        run_units(per_state, seed, tag, |rng, count| {
            (0..count)
                .filter(|_| {
                    let x = mean + NoiseShape::Gaussian.sample(rng, sigma);
                    logic.reads_one(x) != state
                })
                .count() as u64
        })
        .into_iter()
        .sum()
    };
    let p10 = binomial_estimate(count_errors(false, TAG_STATE0), per_state, seed);
    let p01 = binomial_estimate(count_errors(true, TAG_STATE1), per_state, seed);
    let p_avg = McEstimate {
        mean: 0.5 * (p10.mean + p01.mean),
        std_error: 0.5 * p10.std_error.hypot(p01.std_error),
        n_samples: 2 * per_state,
        seed,
    };
    Ok(EmpiricalErrors {
        p_1_given_0: p10,
        p_0_given_1: p01,
        p_avg,
    })
}

/// Plug-in `I(X;Y)` in bits from the 2x2 histogram of equiprobable random
/// input bits and their thresholded readouts.
///
/// The standard error is the first-order (delta-method) value
/// `sqrt((sum p log2^2(p/(p_x p_y)) - I^2) / n)`; it vanishes at `I = 0`
/// and `I = 1`, where the estimator's error is second order.
pub fn empirical_mutual_information(logic: &Logic, n_samples: u64, seed: u64) -> Result<McEstimate> {
    if n_samples < 10_000 {
        return Err(Error::domain(format!("need at least 10000 samples, got {n_samples}")));
    }
    let counts = run_units(n_samples, seed, TAG_CHANNEL, |rng, count| {
        let mut c = [[0u64; 2]; 2];
        for _ in 0..count {
            let state: bool = rng.random();
            let (mean, sigma) = logic.state_distribution(state);
            let x = mean + NoiseShape::Gaussian.sample(rng, sigma);
            c[state as usize][logic.reads_one(x) as usize] += 1;
        }
        c
    })
    .into_iter()
    .fold([[0u64; 2]; 2], |mut acc, c| {
        for x in 0..2 {
            for y in 0..2 {
                acc[x][y] += c[x][y];
            }
        }
        acc
    });

    let n = n_samples as f64;
    let p = |x: usize, y: usize| counts[x][y] as f64 / n;
    let px = [p(0, 0) + p(0, 1), p(1, 0) + p(1, 1)];
    let py = [p(0, 0) + p(1, 0), p(0, 1) + p(1, 1)];
    let (mut mi, mut second) = (0.0, 0.0);
    for (x, &px) in px.iter().enumerate() {
        for (y, &py) in py.iter().enumerate() {
            let pxy = p(x, y);
            if pxy > 0.0 {
                let l = (pxy / (px * py)).log2();
                mi += pxy * l;
                second += pxy * l * l;
            }
        }
    }
    let mi = mi.max(0.0);
    Ok(McEstimate {
        mean: mi,
        std_error: ((second - mi * mi).max(0.0) / n).sqrt(),
        n_samples,
        seed,
    })
}

/// Full-sample statistic and delete-one jackknife standard error for a
/// statistic of the sample mean and the (n-1)-divisor sample variance.
fn jackknife_mean_var(values: &[f64], stat: impl Fn(f64, f64) -> f64) -> (f64, f64) {
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let d2: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let full = stat(mean, d2 / (m - 1.0));

    let leave_one_out = |v: f64| {
        let d = v - mean;
        let mean_i = mean - d / (m - 1.0);
        let var_i = (d2 - d * d * m / (m - 1.0)) / (m - 2.0);
        stat(mean_i, var_i)
    };
    let avg = values.iter().map(|&v| leave_one_out(v)).sum::<f64>() / m;
    let spread: f64 = values
        .iter()
        .map(|&v| {
            let e = leave_one_out(v) - avg;
            e * e
        })
        .sum();
    (full, ((m - 1.0) / m * spread).sqrt())
}

fn check_trials(n: u64, trials: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("need at least 2 draws per trial, got {n}")));
    }
    if trials < 10_000 {
        return Err(Error::domain(format!("need at least 10000 trials, got {trials}")));
    }
    Ok(())
}

/// Per-trial `(sample mean, sample variance)` pairs.
fn trial_moments(shape: NoiseShape, mu: f64, sigma: f64, n: u64, trials: u64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let chunks = run_units(trials, seed, TAG_TRIALS, |rng, count| {
        let mut buf = vec![0.0; n as usize];
        let mut means = Vec::with_capacity(count as usize);
        let mut vars = Vec::with_capacity(count as usize);
        for _ in 0..count {
            for x in buf.iter_mut() {
                *x = mu + shape.sample(rng, sigma);
            }
            let mean = buf.iter().sum::<f64>() / n as f64;
            let ss: f64 = buf.iter().map(|x| (x - mean) * (x - mean)).sum();
            means.push(mean);
            vars.push(ss / (n - 1) as f64);
        }
        (means, vars)
    });
    let mut means = Vec::with_capacity(trials as usize);
    let mut vars = Vec::with_capacity(trials as usize);
    for (m, v) in chunks {
        means.extend(m);
        vars.extend(v);
    }
    (means, vars)
}

/// Empirical variance of the (n-1)-divisor sample variance over `trials` repetitions.
pub fn empirical_variance_of_sample_variance(
    shape: NoiseShape,
    sigma: f64,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_trials(n, trials)?;
    let (_, vars) = trial_moments(shape, 0.0, sigma, n, trials, seed);
    let (mean, std_error) = jackknife_mean_var(&vars, |_, var| var);
    Ok(McEstimate {
        mean,
        std_error,
        n_samples: trials,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalSnr {
    /// `E[x_hat]^2 / Var(x_hat)`.
    pub snr_mean: McEstimate,
    /// `E[s^2]^2 / Var(s^2)`.
    pub snr_var: McEstimate,
}

pub fn empirical_snr(shape: NoiseShape, mu: f64, sigma: f64, n: u64, trials: u64, seed: u64) -> Result<EmpiricalSnr> {
    check_trials(n, trials)?;
    let (means, vars) = trial_moments(shape, mu, sigma, n, trials, seed);
    let ratio = |m: f64, v: f64| m * m / v;
    let (snr_mean, se_mean) = jackknife_mean_var(&means, ratio);
    let (snr_var, se_var) = jackknife_mean_var(&vars, ratio);
    Ok(EmpiricalSnr {
        snr_mean: McEstimate {
            mean: snr_mean,
            std_error: se_mean,
            n_samples: trials,
            seed,
        },
        snr_var: McEstimate {
            mean: snr_var,
            std_error: se_var,
            n_samples: trials,
            seed,
        },
    })
}

/// One analytic-vs-Monte-Carlo comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCheck {
    pub name: String,
    pub analytic: f64,
    pub estimate: McEstimate,
    /// Accepted band in standard errors.
    pub z_limit: f64,
}

impl ValidationCheck {
    pub fn z(&self) -> f64 {
        self.estimate.z_score(self.analytic)
    }

    pub fn passed(&self) -> bool {
        self.z() <= self.z_limit
    }
}

/// Distinct seed for check `index` derived from the master seed.
fn check_seed(master: u64, index: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Compares every analytic model with its simulated counterpart.
///
/// `samples` sets the channel simulations, `trials` the estimator
/// simulations. Each check draws from its own seed derived from `seed`.
pub fn validation_suite(samples: u64, trials: u64, seed: u64) -> Result<Vec<ValidationCheck>> {
    const Z: f64 = 4.0;
    let mut checks = Vec::new();
    let mut index = 0u64;
    let mut next_seed = || {
        index += 1;
        check_seed(seed, index)
    };

    let channel_points = [
        ("mbl(mu=2,s=1,vth=1)", Logic::Mbl(MblParams::new(2.0, 1.0, 1.0, 1.0)?)),
        ("vbl(s0=1,s1=2,vth=2)", Logic::Vbl(VblParams::new(1.0, 2.0, 2.0)?)),
        ("vbl(s0=1,s1=1.2,vth=4)", Logic::Vbl(VblParams::new(1.0, 1.2, 4.0)?)),
        ("vbl(s0=s1=1,vth=2)", Logic::Vbl(VblParams::new(1.0, 1.0, 2.0)?)),
    ];
    for (label, logic) in channel_points {
        let analytic = logic.conditional_errors();
        let est = empirical_error_rates(&logic, samples, next_seed())?;
        checks.push(ValidationCheck {
            name: format!("p_1_given_0 {label}"),
            analytic: analytic.p_1_given_0,
            estimate: est.p_1_given_0,
            z_limit: Z,
        });
        checks.push(ValidationCheck {
            name: format!("p_0_given_1 {label}"),
            analytic: analytic.p_0_given_1,
            estimate: est.p_0_given_1,
            z_limit: Z,
        });
        checks.push(ValidationCheck {
            name: format!("p_avg {label}"),
            analytic: 0.5 * (analytic.p_1_given_0 + analytic.p_0_given_1),
            estimate: est.p_avg,
            z_limit: Z,
        });
    }

    // Mutual information at points where the plug-in estimator is non-degenerate.
    for (label, logic) in &channel_points[..3] {
        let analytic = mutual_information_true(&logic.conditional_errors(), &Priors::EQUAL);
        checks.push(ValidationCheck {
            name: format!("mutual_info {label}"),
            analytic,
            estimate: empirical_mutual_information(logic, samples, next_seed())?,
            z_limit: Z,
        });
    }

    for (shape, n) in [
        (NoiseShape::Gaussian, 11),
        (NoiseShape::Uniform, 10),
        (NoiseShape::Laplace, 10),
    ] {
        let k = shape.excess_kurtosis();
        checks.push(ValidationCheck {
            name: format!("var_sample_variance {}(n={n})", shape.as_str()),
            analytic: var_of_sample_variance(1.0, n, k)?,
            estimate: empirical_variance_of_sample_variance(shape, 1.0, n, trials, next_seed())?,
            z_limit: Z,
        });
    }

    let snr = empirical_snr(NoiseShape::Gaussian, 1.0, 1.0, 10, trials, next_seed())?;
    checks.push(ValidationCheck {
        name: "snr_mean gaussian(mu=1,s=1,n=10)".into(),
        analytic: 10.0,
        estimate: snr.snr_mean,
        z_limit: Z,
    });
    for (shape, mu, n) in [
        (NoiseShape::Gaussian, 0.7, 11),
        (NoiseShape::Uniform, 0.0, 10),
        (NoiseShape::Laplace, 0.0, 10),
    ] {
        let snr = empirical_snr(shape, mu, 1.0, n, trials, next_seed())?;
        checks.push(ValidationCheck {
            name: format!("snr_var {}(mu={mu},n={n})", shape.as_str()),
            analytic: snr_vbl(n, shape.excess_kurtosis())?,
            estimate: snr.snr_var,
            z_limit: Z,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gaussian_upper_tail;

    fn pool(workers: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap()
    }

    #[test]
    fn gaussian_sampler_passes_kolmogorov_smirnov() {
        let n = 1_000_000u64;
        let mut xs: Vec<f64> = run_units(n, 7, 99, |rng, count| {
            (0..count)
                .map(|_| NoiseShape::Gaussian.sample(rng, 1.0))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        xs.sort_by(f64::total_cmp);
        let nf = n as f64;
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - gaussian_upper_tail(x).unwrap();
                (cdf - i as f64 / nf).abs().max(((i + 1) as f64 / nf - cdf).abs())
            })
            .fold(0.0, f64::max);
        // Asymptotic Kolmogorov tail: P(sqrt(n) D > t) = 2 sum (-1)^(k-1) exp(-2 k^2 t^2).
        let t = d * nf.sqrt();
        let p: f64 = (1..100)
            .map(|k| {
                let k = k as f64;
                2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * t * t).exp()
            })
            .sum();
        assert!(p > 0.001, "KS statistic {d}, p={p}");
    }

    #[test]
    fn shapes_have_unit_variance_and_stated_kurtosis() {
        for shape in [NoiseShape::Gaussian, NoiseShape::Uniform, NoiseShape::Laplace] {
            let xs: Vec<f64> = run_units(400_000, 3, 5, |rng, count| {
                (0..count).map(|_| shape.sample(rng, 2.0)).collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
            let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
            assert!((m2 / 4.0 - 1.0).abs() < 0.01, "{shape:?} var {m2}");
            let k = m4 / (m2 * m2) - 3.0;
            assert!((k - shape.excess_kurtosis()).abs() < 0.15, "{shape:?} kurtosis {k}");
        }
    }

    #[test]
    fn error_rates_match_analytic() {
        let logic = Logic::Mbl(MblParams::new(2.0, 1.0, 1.0, 1.0).unwrap());
        let est = empirical_error_rates(&logic, 1_000_000, DEFAULT_SEED).unwrap();
        assert!(est.p_1_given_0.z_score(0.158_655_253_931_457) < 4.0);
        assert!(est.p_0_given_1.z_score(0.158_655_253_931_457) < 4.0);

        let logic = Logic::Vbl(VblParams::new(1.0, 1.0, 2.0).unwrap());
        let est = empirical_error_rates(&logic, 1_000_000, DEFAULT_SEED).unwrap();
        assert!(est.p_avg.z_score(0.5) < 4.0);

        let logic = Logic::Mbl(MblParams::new(0.0, 1.0, 1.0, 0.0).unwrap());
        let est = empirical_error_rates(&logic, 10_000, 1).unwrap();
        assert!((est.p_avg.mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn too_few_samples_is_a_domain_error() {
        let logic = Logic::Vbl(VblParams::new(1.0, 2.0, 2.0).unwrap());
        assert!(matches!(empirical_error_rates(&logic, 999, 0), Err(Error::Domain(_))));
        assert!(empirical_mutual_information(&logic, 9_999, 0).is_err());
        assert!(empirical_variance_of_sample_variance(NoiseShape::Gaussian, 1.0, 1, 10_000, 0).is_err());
        assert!(empirical_snr(NoiseShape::Gaussian, 0.0, 1.0, 5, 9_999, 0).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let noiseless = Logic::Mbl(MblParams::new(20.0, 1.0, 1.0, 10.0).unwrap());
        let est = empirical_mutual_information(&noiseless, 100_000, 11).unwrap();
        assert!((est.mean - 1.0).abs() < 1e-4);

        let vbl = Logic::Vbl(VblParams::new(1.0, 2.0, 2.0).unwrap());
        let est = empirical_mutual_information(&vbl, 1_000_000, DEFAULT_SEED).unwrap();
        assert!(est.z_score(0.098_942_630_929_171) < 4.0, "{est:?}");

        let flat = Logic::Vbl(VblParams::new(1.3, 1.3, 0.9).unwrap());
        let est = empirical_mutual_information(&flat, 100_000, 5).unwrap();
        assert!(est.mean < 1e-4);
    }

    #[test]
    fn variance_of_variance_gaussian() {
        let est = empirical_variance_of_sample_variance(NoiseShape::Gaussian, 1.0, 11, 200_000, 17).unwrap();
        assert!((est.mean / 0.2 - 1.0).abs() < 0.05);
        assert!(est.z_score(0.2) < 4.0);
    }

    #[test]
    fn snr_examples() {
        let snr = empirical_snr(NoiseShape::Gaussian, 1.0, 1.0, 10, 200_000, 23).unwrap();
        assert!((snr.snr_mean.mean / 10.0 - 1.0).abs() < 0.05);
        let snr11 = empirical_snr(NoiseShape::Gaussian, 3.0, 1.0, 11, 200_000, 29).unwrap();
        assert!((snr11.snr_var.mean / 5.0 - 1.0).abs() < 0.05);
        let zero = empirical_snr(NoiseShape::Gaussian, 0.0, 1.0, 10, 50_000, 31).unwrap();
        assert!(zero.snr_mean.mean < 1e-3);
    }

    #[test]
    fn snr_var_is_shift_invariant() {
        let a = empirical_snr(NoiseShape::Gaussian, 0.0, 1.0, 11, 100_000, 41)
            .unwrap()
            .snr_var;
        let b = empirical_snr(NoiseShape::Gaussian, 5.0, 1.0, 11, 100_000, 41)
            .unwrap()
            .snr_var;
        // Same draws shifted by a constant: identical up to rounding of the shift.
        assert!((a.mean - b.mean).abs() < 1e-9 * a.mean);
    }

    #[test]
    fn results_do_not_depend_on_worker_count() {
        let logic = Logic::Vbl(VblParams::new(1.0, 1.5, 2.0).unwrap());
        let run = |w| {
            pool(w).install(|| {
                (
                    empirical_error_rates(&logic, 300_000, 5).unwrap(),
                    empirical_mutual_information(&logic, 300_000, 5).unwrap(),
                    empirical_snr(NoiseShape::Laplace, 0.3, 1.0, 7, 100_000, 5).unwrap(),
                )
            })
        };
        let (a, b) = (run(1), run(4));
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn jackknife_of_variance_matches_closed_form_scale() {
        // For Gaussian data the SE of the sample variance is about sqrt(2/m) * var.
        let xs: Vec<f64> = run_units(100_000, 1, 1, |rng, count| {
            (0..count)
                .map(|_| NoiseShape::Gaussian.sample(rng, 1.0))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        let (var, se) = jackknife_mean_var(&xs, |_, v| v);
        let expected = (2.0 / 100_000f64).sqrt() * var;
        assert!((se / expected - 1.0).abs() < 0.05, "se {se} vs {expected}");
    }
}
