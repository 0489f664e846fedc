//! Parameter sweeps, FOM minimization and the MBL/VBL transition point.
//!
//! A [`SweepGrid`] is the Cartesian product of up to three axes (`mu`,
//! `sigma1`, `v_th`), expanded in row-major order with `mu` outermost and
//! `v_th` innermost. Cells are evaluated in parallel but the result is
//! always assembled in grid order.

use crate::channel::{mutual_information_true, nominal_capacity_bits};
use crate::energy::{fom, power_mbl, power_vbl, EnergyPoint, Power};
use crate::logic::{
    average_error, mbl_conditional_errors, vbl_conditional_errors, ErrorPair, Logic, LogicFamily, MblParams,
    MeasurementSetup, Priors, VblParams,
};
use crate::snr::{choose_logic, crossover_mu, SnrModel};
use crate::{Error, Result};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One swept axis; endpoints are included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            spacing: Spacing::Log,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.count < 2 {
            return Err(Error::config(format!("axis {name} needs at least 2 points")));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::config(format!(
                "axis {name} needs finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0) {
            return Err(Error::config(format!("log-spaced axis {name} needs min > 0")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisSpec {
    Fixed(f64),
    Sweep(Axis),
}

impl AxisSpec {
    pub fn values(&self, name: &str) -> Result<Vec<f64>> {
        match self {
            AxisSpec::Fixed(v) => Ok(vec![*v]),
            AxisSpec::Sweep(axis) => {
                axis.validate(name)?;
                Ok(axis.values())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdSpec {
    Fixed(f64),
    Sweep(Axis),
    /// MBL midpoint threshold `v_th = mu / 2`.
    HalfMu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityFormula {
    /// `1 - H(Y|X)`.
    Nominal,
    /// `I(X;Y)`.
    TrueMi,
}

impl std::str::FromStr for CapacityFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nominal" => Ok(CapacityFormula::Nominal),
            "true-mi" | "true_mi" | "mi" => Ok(CapacityFormula::TrueMi),
            other => Err(Error::config(format!(
                "unknown capacity formula `{other}` (expected nominal or true-mi)"
            ))),
        }
    }
}

impl CapacityFormula {
    pub fn as_str(&self) -> &'static str {
        match self {
            CapacityFormula::Nominal => "nominal",
            CapacityFormula::TrueMi => "true-mi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub family: LogicFamily,
    pub sigma0: f64,
    /// Ignored for VBL.
    pub mu: AxisSpec,
    /// For MBL, `Fixed(sigma0)` gives the equal-variance configuration.
    pub sigma1: AxisSpec,
    pub v_th: ThresholdSpec,
    /// Which capacity the optimizer and `best` helpers read; every row carries both.
    pub capacity: CapacityFormula,
}

impl SweepGrid {
    /// Thermal-limited MBL: `sigma0 = sigma1 = 1`, `v_th = mu / 2`, `mu` swept.
    pub fn mbl_midpoint(mu: Axis) -> Self {
        Self {
            family: LogicFamily::Mbl,
            sigma0: 1.0,
            mu: AxisSpec::Sweep(mu),
            sigma1: AxisSpec::Fixed(1.0),
            v_th: ThresholdSpec::HalfMu,
            capacity: CapacityFormula::Nominal,
        }
    }

    /// VBL with `sigma0 = 1`, swept `sigma1` and `v_th`.
    pub fn vbl(sigma1: AxisSpec, v_th: ThresholdSpec) -> Self {
        Self {
            family: LogicFamily::Vbl,
            sigma0: 1.0,
            mu: AxisSpec::Fixed(0.0),
            sigma1,
            v_th,
            capacity: CapacityFormula::Nominal,
        }
    }

    /// Expands the grid into logic configurations in row-major order.
    pub fn cells(&self) -> Result<Vec<Logic>> {
        let mus = match (self.family, self.mu) {
            (LogicFamily::Vbl, _) => vec![0.0],
            (LogicFamily::Mbl, spec) => spec.values("mu")?,
        };
        let sigma1s = self.sigma1.values("sigma1")?;
        let thresholds = match self.v_th {
            ThresholdSpec::Fixed(v) => Some(vec![v]),
            ThresholdSpec::Sweep(axis) => {
                axis.validate("v_th")?;
                Some(axis.values())
            }
            ThresholdSpec::HalfMu if self.family == LogicFamily::Mbl => None,
            ThresholdSpec::HalfMu => return Err(Error::config("v_th = mu/2 only applies to MBL")),
        };

        let mut cells = Vec::new();
        for &mu in &mus {
            for &s1 in &sigma1s {
                match &thresholds {
                    Some(vs) => {
                        for &v in vs {
                            cells.push(self.cell(mu, s1, v)?);
                        }
                    }
                    None => cells.push(self.cell(mu, s1, 0.5 * mu)?),
                }
            }
        }
        Ok(cells)
    }

    fn cell(&self, mu: f64, sigma1: f64, v_th: f64) -> Result<Logic> {
        Ok(match self.family {
            LogicFamily::Mbl => Logic::Mbl(MblParams::new(mu, self.sigma0, sigma1, v_th)?),
            LogicFamily::Vbl => Logic::Vbl(VblParams::new(self.sigma0, sigma1, v_th)?),
        })
    }
}

/// One fully evaluated operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPoint {
    pub logic: Logic,
    pub errors: ErrorPair,
    pub p_avg: f64,
    /// Nominal capacity, bits per measurement.
    pub capacity_nominal: f64,
    /// Mutual information, bits per measurement.
    pub mi_true: f64,
    pub power: Power,
    pub fom_nominal: EnergyPoint,
    pub fom_true: EnergyPoint,
}

impl ChannelPoint {
    pub fn fom(&self, formula: CapacityFormula) -> &EnergyPoint {
        match formula {
            CapacityFormula::Nominal => &self.fom_nominal,
            CapacityFormula::TrueMi => &self.fom_true,
        }
    }
}

/// Runs the error → capacity → energy pipeline for one configuration.
pub fn evaluate(logic: &Logic, setup: &MeasurementSetup) -> ChannelPoint {
    let errors = logic.conditional_errors();
    let priors = Priors::EQUAL;
    let capacity_nominal = nominal_capacity_bits(&errors, &priors);
    let mi_true = mutual_information_true(&errors, &priors);
    let power = match logic {
        Logic::Mbl(p) => power_mbl(p, setup),
        Logic::Vbl(p) => power_vbl(p, setup),
    };
    ChannelPoint {
        logic: *logic,
        errors,
        p_avg: average_error(&priors, &errors),
        capacity_nominal,
        mi_true,
        power,
        fom_nominal: fom(power, capacity_nominal, setup),
        fom_true: fom(power, mi_true, setup),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: SweepGrid,
    pub rows: Vec<ChannelPoint>,
}

impl SweepResult {
    /// Row with the smallest finite FOM under the grid's capacity formula.
    pub fn best(&self) -> Option<&ChannelPoint> {
        self.rows
            .iter()
            .filter(|r| r.fom(self.grid.capacity).fom_kt_per_bit.is_finite())
            .min_by(|a, b| {
                let f = |r: &ChannelPoint| r.fom(self.grid.capacity).fom_kt_per_bit;
                f(a).total_cmp(&f(b))
            })
    }
}

/// Evaluates every grid cell, in grid order.
pub fn fom_surface(grid: &SweepGrid, setup: &MeasurementSetup) -> Result<SweepResult> {
    let cells = grid.cells()?;
    let rows = cells.par_iter().map(|logic| evaluate(logic, setup)).collect();
    Ok(SweepResult { grid: *grid, rows })
}

/// Same evaluation as [`fom_surface`], ordered by increasing `p_avg`
/// (stable, so ties keep grid order).
pub fn capacity_vs_perror(grid: &SweepGrid, setup: &MeasurementSetup) -> Result<SweepResult> {
    let mut result = fom_surface(grid, setup)?;
    result.rows.sort_by(|a, b| a.p_avg.total_cmp(&b.p_avg));
    Ok(result)
}

/// Threshold bounds for [`minimize_fom`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRange {
    Range(f64, f64),
    /// MBL only: `v_th` tied to `mu / 2`, leaving a one-dimensional search.
    HalfMu,
}

/// Search box for [`minimize_fom`].
///
/// `primary` bounds `mu` for MBL (with `sigma1 = sigma0`) and `sigma1` for VBL.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub family: LogicFamily,
    pub sigma0: f64,
    pub primary: (f64, f64),
    pub v_th: ThresholdRange,
}

impl SearchBox {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.primary;
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::config(format!(
                "search bounds need min <= max, got [{lo}, {hi}]"
            )));
        }
        match self.v_th {
            ThresholdRange::Range(a, b) if !(a <= b) || !a.is_finite() || !b.is_finite() => {
                Err(Error::config(format!("v_th bounds need min <= max, got [{a}, {b}]")))
            }
            ThresholdRange::HalfMu if self.family == LogicFamily::Vbl => {
                Err(Error::config("v_th = mu/2 only applies to MBL"))
            }
            _ => Ok(()),
        }
    }

    fn primary_name(&self) -> &'static str {
        match self.family {
            LogicFamily::Mbl => "mu",
            LogicFamily::Vbl => "sigma1",
        }
    }

    fn logic(&self, x: f64, v: f64) -> Result<Logic> {
        Ok(match (self.family, self.v_th) {
            (LogicFamily::Mbl, ThresholdRange::HalfMu) => {
                Logic::Mbl(MblParams::new(x, self.sigma0, self.sigma0, 0.5 * x)?)
            }
            (LogicFamily::Mbl, _) => Logic::Mbl(MblParams::new(x, self.sigma0, self.sigma0, v)?),
            (LogicFamily::Vbl, _) => Logic::Vbl(VblParams::new(self.sigma0, x, v)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeReport {
    pub best: ChannelPoint,
    pub best_fom: f64,
    /// Coordinate-descent sweeps summed over restarts.
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Final parameter displacement of the run that produced `best`.
    pub tolerance_achieved: f64,
    /// Bounds the optimum sits on, e.g. `"mu_min"`.
    pub boundary: Vec<String>,
}

const MAX_SWEEPS: usize = 500;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

struct Objective<'a> {
    bounds: &'a SearchBox,
    formula: CapacityFormula,
    setup: &'a MeasurementSetup,
    evaluations: usize,
    best: Option<(f64, ChannelPoint)>,
}

impl Objective<'_> {
    fn eval(&mut self, x: f64, v: f64) -> Result<f64> {
        let point = evaluate(&self.bounds.logic(x, v)?, self.setup);
        let f = point.fom(self.formula).fom_kt_per_bit;
        let f = if f.is_nan() { f64::INFINITY } else { f };
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|(b, _)| f < *b) {
            self.best = Some((f, point));
        }
        Ok(f)
    }
}

/// Golden-section search on `[lo, hi]` that also probes both endpoints and
/// never returns a point worse than `(start, f_start)`.
fn line_search(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    start: f64,
    f_start: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let mut best = (start, f_start);
    let mut consider = |x: f64, fx: f64| {
        if fx < best.1 {
            best = (x, fx);
        }
    };
    if hi - lo <= 0.0 {
        return Ok(best);
    }
    consider(lo, f(lo)?);
    consider(hi, f(hi)?);

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    consider(x1, f1);
    consider(x2, f2);
    Ok(best)
}

/// Coordinate descent with golden-section line searches, restarted from
/// five fixed points of the box (centre and the four quarter points).
pub fn minimize_fom(
    bounds: &SearchBox,
    formula: CapacityFormula,
    tol: f64,
    setup: &MeasurementSetup,
) -> Result<MinimizeReport> {
    bounds.validate()?;
    if !(tol > 0.0) {
        return Err(Error::config(format!("tolerance must be positive, got {tol}")));
    }
    let (xlo, xhi) = bounds.primary;
    let (vlo, vhi) = match bounds.v_th {
        ThresholdRange::Range(a, b) => (a, b),
        ThresholdRange::HalfMu => (0.0, 0.0),
    };
    let two_d = matches!(bounds.v_th, ThresholdRange::Range(..));

    let mut obj = Objective {
        bounds,
        formula,
        setup,
        evaluations: 0,
        best: None,
    };
    let mut iterations = 0;
    let mut best_run: Option<(f64, bool, f64)> = None;

    for (fx, fv) in [(0.5, 0.5), (0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)] {
        let mut x = xlo + fx * (xhi - xlo);
        let mut v = vlo + fv * (vhi - vlo);
        let mut f = obj.eval(x, v)?;
        let mut converged = false;
        let mut displacement = f64::INFINITY;
        for _ in 0..MAX_SWEEPS {
            iterations += 1;
            let (nx, _) = line_search(|t| obj.eval(t, v), xlo, xhi, x, f, tol)?;
            let (nv, nf) = if two_d {
                let fx_new = obj.eval(nx, v)?;
                line_search(|t| obj.eval(nx, t), vlo, vhi, v, fx_new, tol)?
            } else {
                (v, obj.eval(nx, v)?)
            };
            displacement = (nx - x).abs().max((nv - v).abs());
            let change = (f - nf).abs();
            x = nx;
            v = nv;
            let settled = change <= tol * nf.abs() || (f.is_infinite() && nf.is_infinite());
            f = nf;
            if displacement < tol && settled {
                converged = true;
                break;
            }
        }
        if best_run.is_none_or(|(bf, _, _)| f < bf) {
            best_run = Some((f, converged, displacement));
        }
    }

    let (best_fom, best) = obj.best.expect("at least one evaluation");
    let (_, converged, tolerance_achieved) = best_run.expect("at least one restart");

    let mut boundary = Vec::new();
    let (bx, bv) = match best.logic {
        Logic::Mbl(p) => (p.mu(), p.v_th()),
        Logic::Vbl(p) => (p.sigma1(), p.v_th()),
    };
    let slack = |lo: f64, hi: f64| tol.max(1e-12 * (hi - lo).abs());
    let name = bounds.primary_name();
    if (bx - xlo).abs() <= slack(xlo, xhi) {
        boundary.push(format!("{name}_min"));
    }
    if (bx - xhi).abs() <= slack(xlo, xhi) {
        boundary.push(format!("{name}_max"));
    }
    if two_d {
        if (bv - vlo).abs() <= slack(vlo, vhi) {
            boundary.push("v_th_min".into());
        }
        if (bv - vhi).abs() <= slack(vlo, vhi) {
            boundary.push("v_th_max".into());
        }
    }
    Ok(MinimizeReport {
        best,
        best_fom,
        iterations,
        evaluations: obj.evaluations,
        converged,
        tolerance_achieved,
        boundary,
    })
}

/// Operating point for locating the MBL/VBL reliability crossing in sigma1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionConfig {
    pub mu: f64,
    pub sigma0: f64,
    pub v_th_mbl: f64,
    pub v_th_vbl: f64,
    pub sigma1_range: (f64, f64),
}

impl Default for TransitionConfig {
    /// `mu = 2`, `sigma0 = 1`, midpoint MBL threshold 1, VBL tail threshold 2,
    /// sigma1 in `[1, 5]`.
    fn default() -> Self {
        Self {
            mu: 2.0,
            sigma0: 1.0,
            v_th_mbl: 1.0,
            v_th_vbl: 2.0,
            sigma1_range: (1.0, 5.0),
        }
    }
}

impl TransitionConfig {
    pub fn p_avg_mbl(&self, sigma1: f64) -> Result<f64> {
        let e = mbl_conditional_errors(&MblParams::new(self.mu, self.sigma0, sigma1, self.v_th_mbl)?);
        Ok(average_error(&Priors::EQUAL, &e))
    }

    pub fn p_avg_vbl(&self, sigma1: f64) -> Result<f64> {
        let e = vbl_conditional_errors(&VblParams::new(self.sigma0, sigma1, self.v_th_vbl)?);
        Ok(average_error(&Priors::EQUAL, &e))
    }

    /// `p_avg_MBL - p_avg_VBL`; negative where MBL is the more reliable readout.
    pub fn p_avg_difference(&self, sigma1: f64) -> Result<f64> {
        Ok(self.p_avg_mbl(sigma1)? - self.p_avg_vbl(sigma1)?)
    }
}

/// Bisection for the sigma1 at which MBL and VBL have equal `p_avg`.
pub fn find_transition_point(config: &TransitionConfig) -> Result<f64> {
    let (mut lo, mut hi) = config.sigma1_range;
    if !(lo < hi) {
        return Err(Error::config(format!("sigma1 range needs min < max, got [{lo}, {hi}]")));
    }
    let mut f_lo = config.p_avg_difference(lo)?;
    let f_hi = config.p_avg_difference(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotFound(format!(
            "p_avg difference does not change sign on sigma1 in [{lo}, {hi}]"
        )));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = config.p_avg_difference(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrCell {
    pub mu: f64,
    pub sigma: f64,
    pub snr_mbl: f64,
    pub snr_vbl: f64,
    pub choice: LogicFamily,
    /// Boundary mean for this cell's sigma.
    pub crossover_mu: f64,
}

/// Classifies a `resolution x resolution` grid of `(mu, sigma)` cells by the
/// higher-SNR logic. Rows are ordered `sigma`-major.
pub fn snr_region_map(
    mu_range: (f64, f64),
    sigma_range: (f64, f64),
    n: u64,
    kurtosis_excess: f64,
    resolution: usize,
) -> Result<Vec<SnrCell>> {
    let mus = AxisSpec::Sweep(Axis::linear(mu_range.0, mu_range.1, resolution)).values("mu")?;
    let sigmas = AxisSpec::Sweep(Axis::linear(sigma_range.0, sigma_range.1, resolution)).values("sigma")?;
    if mu_range.0 < 0.0 || !(sigma_range.0 > 0.0) {
        return Err(Error::config("snr map needs mu >= 0 and sigma > 0"));
    }
    let mut cells = Vec::with_capacity(resolution * resolution);
    for &sigma in &sigmas {
        let boundary = crossover_mu(n, sigma, kurtosis_excess)?;
        for &mu in &mus {
            let c = choose_logic(&SnrModel::new(n, mu, sigma, kurtosis_excess)?)?;
            cells.push(SnrCell {
                mu,
                sigma,
                snr_mbl: c.snr_mbl,
                snr_vbl: c.snr_vbl,
                choice: c.choice,
                crossover_mu: boundary,
            });
        }
    }
    Ok(cells)
}
