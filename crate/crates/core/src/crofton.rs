//! Numerical checks of the Crofton identity `F(x, y) = c(n)·d(x, y)`:
//! invariance of `F` under isometries, additivity along geodesics, and a
//! linear fit of `F(o, a_t o)` against `t` that yields `c(n)`.
//!
//! Statistical acceptance: a row passes at 3 combined standard errors; a suite
//! passes when at least 95% of its rows pass and none deviates by more than 5.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exec::Executor;
use crate::lorentz::{apply_point, geodesic_point, HyperbolicPoint, LorentzTransform};
use crate::math::{abs, sphere_area, sqrt};
use crate::measure::{
    combined_stderr, measure_separating, measure_separating_at_distance, measure_separating_in_frame,
    IntegrationConfig, MeasureEstimate, Method,
};
use crate::rng::{derive_seed, tag};
use crate::{check_dim, Error, Result};

pub const ROW_SIGMAS: f64 = 3.0;
pub const HARD_SIGMAS: f64 = 5.0;
pub const MIN_ROW_PASS_FRACTION: f64 = 0.95;
pub const MIN_T_VALUES: usize = 4;
pub const MIN_T_SPAN: f64 = 8.0;

/// Nominal relative error bar given to quadrature values in the linear fit,
/// which otherwise carry no statistical error.
pub const QUADRATURE_REL_SIGMA: f64 = 1e-4;

pub const DEFAULT_T_VALUES: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

/// Upper bound on χ²/dof: its mean plus four standard deviations.
pub fn max_reduced_chi2(dof: usize) -> f64 {
    1.0 + 4.0 * sqrt(2.0 / dof as f64)
}

/// `c(n)` in closed form: the volume of the unit ball in `R^{n-1}`.
pub fn crofton_constant(n: usize) -> Result<f64> {
    check_dim(n)?;
    Ok(sphere_area(n - 1) / (n - 1) as f64)
}

/// A statistical comparison: observed deviation against its standard error.
pub trait Deviation {
    fn deviation(&self) -> f64;
    fn combined_stderr(&self) -> f64;

    /// Absolute slack added to every threshold, for rows whose error bar can
    /// vanish while roundoff does not.
    fn floor(&self) -> f64 {
        0.0
    }

    fn within(&self, sigmas: f64) -> bool {
        abs(self.deviation()) <= sigmas * self.combined_stderr() + self.floor()
    }

    /// `(|deviation| − floor)⁺ / stderr`, with `0/0 = 0`.
    fn z_score(&self) -> f64 {
        let (d, s) = ((abs(self.deviation()) - self.floor()).max(0.0), self.combined_stderr());
        if d == 0.0 {
            0.0
        } else if s == 0.0 {
            f64::INFINITY
        } else {
            d / s
        }
    }
}

/// Verdict for a suite of rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteVerdict {
    pub rows: usize,
    pub within_row_sigmas: usize,
    pub beyond_hard_sigmas: usize,
    pub max_z: f64,
    pub pass: bool,
}

impl SuiteVerdict {
    pub fn evaluate<R: Deviation>(rows: &[R]) -> Self {
        let within = rows.iter().filter(|r| r.within(ROW_SIGMAS)).count();
        let beyond = rows.iter().filter(|r| !r.within(HARD_SIGMAS)).count();
        let max_z = rows.iter().map(Deviation::z_score).fold(0.0, f64::max);
        let pass = !rows.is_empty() && within as f64 >= MIN_ROW_PASS_FRACTION * rows.len() as f64 && beyond == 0;
        Self { rows: rows.len(), within_row_sigmas: within, beyond_hard_sigmas: beyond, max_z, pass }
    }

    pub fn pass_fraction(&self) -> f64 {
        if self.rows == 0 {
            0.0
        } else {
            self.within_row_sigmas as f64 / self.rows as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceRow {
    pub pair: usize,
    pub transform: usize,
    pub original: MeasureEstimate,
    pub transformed: MeasureEstimate,
}

impl Deviation for InvarianceRow {
    fn deviation(&self) -> f64 {
        self.transformed.value - self.original.value
    }

    fn combined_stderr(&self) -> f64 {
        combined_stderr(&[self.original.stderr, self.transformed.stderr])
    }
}

/// `F(g·x, g·y)` against `F(x, y)` for every pair and transform.
///
/// Both sides are integrated in their own coordinates (no reduction to the
/// canonical pair), using the same per-row seed.
pub fn check_invariance<E: Executor>(
    pairs: &[(HyperbolicPoint, HyperbolicPoint)],
    transforms: &[LorentzTransform],
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<Vec<InvarianceRow>> {
    if pairs.is_empty() || transforms.is_empty() {
        return Err(Error::InvalidConfig("invariance check needs pairs and transforms".into()));
    }
    let per_pair = transforms.len();
    let rows = exec.map(pairs.len() * per_pair, |idx| {
        let (p, g) = (idx / per_pair, idx % per_pair);
        let (x, y) = &pairs[p];
        let transform = &transforms[g];
        let row_cfg = cfg.with_seed(derive_seed(cfg.seed, tag::INVARIANCE, idx as u64));
        let original = measure_separating_in_frame(x, y, &row_cfg, exec)?;
        let (gx, gy) = (apply_point(transform, x), apply_point(transform, y));
        let transformed = measure_separating_in_frame(&gx, &gy, &row_cfg, exec)?;
        Ok(InvarianceRow { pair: p, transform: g, original, transformed })
    });
    rows.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityRow {
    pub s: f64,
    pub first: MeasureEstimate,
    pub second: MeasureEstimate,
    pub whole: MeasureEstimate,
}

impl Deviation for AdditivityRow {
    fn deviation(&self) -> f64 {
        self.first.value + self.second.value - self.whole.value
    }

    fn combined_stderr(&self) -> f64 {
        combined_stderr(&[self.first.stderr, self.second.stderr, self.whole.stderr])
    }
}

/// `F(x, z) + F(z, y)` against `F(x, y)` for `z` at fraction `s` along the geodesic.
pub fn check_additivity<E: Executor>(
    x: &HyperbolicPoint,
    y: &HyperbolicPoint,
    s_values: &[f64],
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<Vec<AdditivityRow>> {
    if s_values.is_empty() {
        return Err(Error::InvalidConfig("additivity check needs at least one s".into()));
    }
    if let Some(s) = s_values.iter().find(|s| !(**s > 0.0 && **s < 1.0)) {
        return Err(Error::InvalidConfig(format!("s must lie in (0, 1), got {s}")));
    }
    let rows = exec.map(s_values.len(), |i| {
        let s = s_values[i];
        let z = geodesic_point(x, y, s)?;
        let seed = |k: u64| cfg.with_seed(derive_seed(cfg.seed, tag::ADDITIVITY, 3 * i as u64 + k));
        Ok(AdditivityRow {
            s,
            first: measure_separating(x, &z, &seed(0), exec)?,
            second: measure_separating(&z, y, &seed(1), exec)?,
            whole: measure_separating(x, y, &seed(2), exec)?,
        })
    });
    rows.into_iter().collect()
}

/// One named pass/fail record with the quantity that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub observed: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    pub t: f64,
    pub estimate: MeasureEstimate,
    /// Error bar used in the fit.
    pub sigma: f64,
}

/// `F(2t) / F(t)` for grid values where both are present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioCheck {
    pub t: f64,
    pub ratio: f64,
    pub stderr: f64,
}

impl Deviation for RatioCheck {
    fn deviation(&self) -> f64 {
        self.ratio - 2.0
    }

    fn combined_stderr(&self) -> f64 {
        self.stderr
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CroftonReport {
    pub n: usize,
    pub method: Method,
    pub points: Vec<FitPoint>,
    /// Weighted least-squares slope through the origin.
    pub c_hat: f64,
    pub c_stderr: f64,
    /// `ROW_SIGMAS · c_stderr`.
    pub c_halfwidth: f64,
    pub affine_slope: f64,
    pub intercept: f64,
    pub intercept_stderr: f64,
    /// χ² per degree of freedom of the through-origin fit.
    pub reduced_chi2: f64,
    pub ratios: Vec<RatioCheck>,
    pub checks: Vec<CheckRecord>,
}

impl CroftonReport {
    pub fn pass(&self) -> bool {
        self.c_hat > 0.0 && self.checks.iter().all(|c| c.pass)
    }
}

struct LineFit {
    slope: f64,
    intercept: f64,
    intercept_se: f64,
}

/// Weighted fit `y = slope·x` with weights `1/σ²`.
fn fit_through_origin(xs: &[f64], ys: &[f64], sigmas: &[f64]) -> (f64, f64) {
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for ((x, y), s) in xs.iter().zip(ys).zip(sigmas) {
        let w = 1.0 / (s * s);
        sxy += w * x * y;
        sxx += w * x * x;
    }
    (sxy / sxx, sqrt(1.0 / sxx))
}

/// Weighted fit `y = intercept + slope·x`.
fn fit_affine(xs: &[f64], ys: &[f64], sigmas: &[f64]) -> LineFit {
    let (mut s, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((x, y), sig) in xs.iter().zip(ys).zip(sigmas) {
        let w = 1.0 / (sig * sig);
        s += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let det = s * sxx - sx * sx;
    LineFit { slope: (s * sxy - sx * sy) / det, intercept: (sxx * sy - sx * sxy) / det, intercept_se: sqrt(sxx / det) }
}

fn validate_t_values(t_values: &[f64]) -> Result<()> {
    if let Some(t) = t_values.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::InvalidConfig(format!("t values must be finite and positive, got {t}")));
    }
    let mut sorted = t_values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if sorted.len() < MIN_T_VALUES {
        return Err(Error::InvalidConfig(format!(
            "need at least {MIN_T_VALUES} distinct t values, got {}",
            sorted.len()
        )));
    }
    let span = sorted[sorted.len() - 1] / sorted[0];
    if span < MIN_T_SPAN {
        return Err(Error::InvalidConfig(format!("t values must span a factor of at least {MIN_T_SPAN}, got {span}")));
    }
    Ok(())
}

/// Estimate `F(o, a_t o)` on a grid of `t` and fit `F = c·t`.
pub fn estimate_c<E: Executor>(n: usize, t_values: &[f64], cfg: &IntegrationConfig, exec: &E) -> Result<CroftonReport> {
    check_dim(n)?;
    cfg.validate(n)?;
    validate_t_values(t_values)?;
    let estimates = exec.map(t_values.len(), |i| {
        let row_cfg = cfg.with_seed(derive_seed(cfg.seed, tag::LINEARITY, i as u64));
        measure_separating_at_distance(n, t_values[i], &row_cfg, exec)
    });
    let mut points = Vec::with_capacity(t_values.len());
    for (&t, est) in t_values.iter().zip(estimates) {
        let estimate = est?;
        let sigma = match estimate.method {
            Method::MonteCarlo => estimate.stderr,
            Method::Quadrature => QUADRATURE_REL_SIGMA * abs(estimate.value),
        }
        .max(f64::MIN_POSITIVE);
        points.push(FitPoint { t, estimate, sigma });
    }
    let ts: Vec<f64> = points.iter().map(|p| p.t).collect();
    let fs: Vec<f64> = points.iter().map(|p| p.estimate.value).collect();
    let sig: Vec<f64> = points.iter().map(|p| p.sigma).collect();

    let (c_hat, c_stderr) = fit_through_origin(&ts, &fs, &sig);
    let affine = fit_affine(&ts, &fs, &sig);
    let chi2: f64 = points
        .iter()
        .map(|p| {
            let r = (p.estimate.value - c_hat * p.t) / p.sigma;
            r * r
        })
        .sum();
    let reduced_chi2 = chi2 / (points.len() - 1) as f64;

    let mut ratios = Vec::new();
    for p in &points {
        if let Some(q) = points.iter().find(|q| abs(q.t - 2.0 * p.t) <= 1e-12 * q.t) {
            let ratio = q.estimate.value / p.estimate.value;
            let (rq, rp) = (q.sigma / q.estimate.value, p.sigma / p.estimate.value);
            let rel = sqrt(rq * rq + rp * rp);
            ratios.push(RatioCheck { t: p.t, ratio, stderr: abs(ratio) * rel });
        }
    }

    let mut checks = Vec::new();
    checks.push(CheckRecord {
        name: "c_positive".into(),
        observed: c_hat - ROW_SIGMAS * c_stderr,
        threshold: 0.0,
        pass: c_hat - ROW_SIGMAS * c_stderr > 0.0,
    });
    checks.push(CheckRecord {
        name: "zero_intercept".into(),
        observed: abs(affine.intercept),
        threshold: ROW_SIGMAS * affine.intercept_se,
        pass: abs(affine.intercept) <= ROW_SIGMAS * affine.intercept_se,
    });
    checks.push(CheckRecord {
        name: "reduced_chi2".into(),
        observed: reduced_chi2,
        threshold: max_reduced_chi2(points.len() - 1),
        pass: reduced_chi2 <= max_reduced_chi2(points.len() - 1),
    });
    for r in &ratios {
        checks.push(CheckRecord {
            name: format!("scale_ratio_t={}", r.t),
            observed: abs(r.deviation()),
            threshold: ROW_SIGMAS * r.stderr,
            pass: r.within(ROW_SIGMAS),
        });
    }

    Ok(CroftonReport {
        n,
        method: cfg.method,
        points,
        c_hat,
        c_stderr,
        c_halfwidth: ROW_SIGMAS * c_stderr,
        affine_slope: affine.slope,
        intercept: affine.intercept,
        intercept_stderr: affine.intercept_se,
        reduced_chi2,
        ratios,
        checks,
    })
}
