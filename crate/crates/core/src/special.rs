//! Scalar special functions: erfc, the Gaussian density and tail, binary entropy.
//!
//! `erfc` is computed from scratch rather than through the platform libm so
//! results do not move between targets. For `|x| < 2` it uses the
//! all-positive-terms series
//!
//! ```text
//! erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n * x / (1*3*...*(2n+1))
//! ```
//!
//! and for `x >= 2` the Laplace continued fraction
//!
//! ```text
//! erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
//! ```
//!
//! evaluated with the modified Lentz algorithm. Negative arguments use
//! `erfc(-x) = 2 - erfc(x)`.

use crate::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const SERIES_CUTOFF: f64 = 2.0;
const PROB_FLOOR: f64 = 1e-300;

/// Complementary error function.
///
/// Absolute error is below `1e-15` on `[-10, 10]`; the result is clamped to `[0, 2]`.
pub fn erfc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("erfc argument must be finite, got {x}")));
    }
    Ok(erfc_finite(x))
}

/// `erfc` for arguments already known to be finite.
pub(crate) fn erfc_finite(x: f64) -> f64 {
    let value = if x < 0.0 { 2.0 - erfc_nonneg(-x) } else { erfc_nonneg(x) };
    value.clamp(0.0, 2.0)
}

fn erfc_nonneg(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < SERIES_CUTOFF {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= two_x2 / f64::from(2 * n + 1);
        sum += term;
        if term < sum * 1e-17 || n > 200 {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * (-x * x).exp() * sum
}

fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..=5000u32 {
        let a = f64::from(n) * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() * FRAC_1_SQRT_PI / f
}

/// Normal density with mean `mu` and standard deviation `sigma`.
pub fn gaussian_pdf(x: f64, mu: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    let z = (x - mu) / sigma;
    Ok(FRAC_1_SQRT_PI * std::f64::consts::FRAC_1_SQRT_2 / sigma * (-0.5 * z * z).exp())
}

/// Upper tail of the standard normal, `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn gaussian_upper_tail(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("tail argument must be finite, got {x}")));
    }
    Ok(0.5 * erfc_finite(x * std::f64::consts::FRAC_1_SQRT_2))
}

/// Binary entropy `H_b(p)` in bits, with `0 log 0 = 0`.
pub fn binary_entropy_bits(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability must lie in [0, 1], got {p}")));
    }
    Ok(entropy_bits(p))
}

/// Unchecked binary entropy for probabilities produced internally.
///
/// The pair `(p, 1-p)` is canonicalised so that `H(p) == H(1-p)` bit for bit.
pub(crate) fn entropy_bits(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let hi = if p >= 0.5 { p } else { 1.0 - p };
    let lo = 1.0 - hi;
    -(xlog2x(lo) + xlog2x(hi))
}

/// `p * log2(p)` with the limit convention at zero and a floor against underflow.
pub(crate) fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        let p = p.clamp(PROB_FLOOR, 1.0);
        p * p.log2()
    }
}
