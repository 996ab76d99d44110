//! Invariant measure of sets of walls.
//!
//! Walls are integrated in the chart `(r, ω) ∈ R × S^{n-1}` against the density
//! `cosh^{n-1} r dr dω`. The chart covers de Sitter space, which double covers
//! the space of walls, so every integral is halved: each wall is counted once.
//!
//! Two routes are provided:
//!
//! * **Monte Carlo** (any `n`): `r` uniform on `[-R, R]`, `ω` uniform on the
//!   sphere via normalized Gaussians, weight `cosh^{n-1} r · 2R · |S^{n-1}| / 2`.
//!   Samples are drawn in fixed-size chunks, chunk `k` from stream `k` of the
//!   configured seed, so the estimate is bit-identical for any executor.
//! * **Quadrature** (`n = 2, 3`): for fixed `ω` the sign of `<p, u(r, ω)>` is
//!   `sign(ω·p̄ − p0 tanh r)`, which changes exactly once, at
//!   `r_p(ω) = atanh(ω·p̄ / p0)`. Separating sets are therefore intervals in
//!   `r` with closed-form endpoints; the `r`-integral uses Gauss–Legendre on the
//!   interval and the sphere uses the trapezoid rule (circle) or Gauss–Legendre
//!   in the polar angle times trapezoid in the azimuth (2-sphere).
//!
//! Separating sets of `x` and `y` only contain walls within
//! `max(d(o, x), d(o, y))` of `o`, which bounds the Monte Carlo `r`-domain.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::exec::Executor;
use crate::lorentz::{translation_to, HyperbolicPoint, LorentzTransform, COINCIDENT_TOL};
use crate::math::{self, abs, atanh, cos, cosh, sin, sinh, sqrt};
use crate::quadrature::GaussLegendre;
use crate::rng::stream;
use crate::wall::{separates_raw, wall_density};
use crate::{check_dim, hyperbolic_distance, Error, Result, EPS_SIDE};

/// Monte Carlo samples per chunk (the unit of parallel work).
pub const CHUNK_SIZE: u64 = 4096;

/// Gauss–Legendre nodes for the radial integral, which is smooth on each interval.
pub const R_NODES: usize = 32;

pub const MIN_MC_SAMPLES: u64 = 1_000;
pub const MIN_QUADRATURE_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationConfig {
    pub method: Method,
    /// Monte Carlo sample count.
    pub samples: u64,
    /// Quadrature nodes per angular axis.
    pub nodes: usize,
    pub seed: u64,
    /// Slack added to the radial bound of the Monte Carlo domain.
    pub r_margin: f64,
    pub eps_side: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self { method: Method::MonteCarlo, samples: 100_000, nodes: 512, seed: 0, r_margin: 0.25, eps_side: EPS_SIDE }
    }
}

impl IntegrationConfig {
    pub fn monte_carlo(samples: u64, seed: u64) -> Self {
        Self { method: Method::MonteCarlo, samples, seed, ..Self::default() }
    }

    pub fn quadrature(nodes: usize) -> Self {
        Self { method: Method::Quadrature, nodes, ..Self::default() }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        check_dim(n)?;
        if !(self.r_margin.is_finite() && self.r_margin >= 0.0) {
            return Err(Error::InvalidConfig(format!("r_margin must be >= 0, got {}", self.r_margin)));
        }
        if !(self.eps_side.is_finite() && self.eps_side >= 0.0) {
            return Err(Error::InvalidConfig(format!("eps_side must be >= 0, got {}", self.eps_side)));
        }
        match self.method {
            Method::MonteCarlo if self.samples < MIN_MC_SAMPLES => Err(Error::InvalidConfig(format!(
                "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {}",
                self.samples
            ))),
            Method::Quadrature if self.nodes < MIN_QUADRATURE_NODES => Err(Error::InvalidConfig(format!(
                "quadrature needs at least {MIN_QUADRATURE_NODES} nodes per axis, got {}",
                self.nodes
            ))),
            Method::Quadrature if n > 3 => {
                Err(Error::InvalidConfig(format!("quadrature is only available for n = 2, 3 (got n = {n})")))
            }
            _ => Ok(()),
        }
    }
}

/// A measure value with its statistical error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureEstimate {
    pub value: f64,
    /// Sample standard error; zero for quadrature.
    pub stderr: f64,
    /// Monte Carlo samples, or integrand evaluations for quadrature.
    pub samples: u64,
    pub method: Method,
}

impl MeasureEstimate {
    pub fn zero(method: Method) -> Self {
        Self { value: 0.0, stderr: 0.0, samples: 0, method }
    }

    pub fn relative_stderr(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.stderr / abs(self.value)
        }
    }
}

/// Root-sum-square of standard errors.
pub fn combined_stderr(errs: &[f64]) -> f64 {
    sqrt(errs.iter().map(|e| e * e).sum())
}

/// Running mean and sum of squared deviations for several outputs at once.
#[derive(Debug, Clone)]
pub(crate) struct Moments {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(outputs: usize) -> Self {
        Self { count: 0, mean: vec![0.0; outputs], m2: vec![0.0; outputs] }
    }

    fn push(&mut self, values: &[f64]) {
        self.count += 1;
        let k = self.count as f64;
        for ((mean, m2), &v) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(values) {
            let delta = v - *mean;
            *mean += delta / k;
            *m2 += delta * (v - *mean);
        }
    }

    fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let total = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / total;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / total;
        }
        self.count += other.count;
    }

    fn estimates(&self) -> Vec<MeasureEstimate> {
        let n = self.count as f64;
        self.mean
            .iter()
            .zip(&self.m2)
            .map(|(&mean, &m2)| {
                let var = if self.count > 1 { m2 / (n - 1.0) } else { 0.0 };
                MeasureEstimate {
                    value: mean,
                    stderr: sqrt(f64::max(var, 0.0) / n),
                    samples: self.count,
                    method: Method::MonteCarlo,
                }
            })
            .collect()
    }
}

/// Largest contribution one Monte Carlo sample of an indicator integrand can
/// make to the estimate. Stands in for the standard error of estimates with
/// few or no hits, whose sample variance is then meaningless.
pub fn mc_resolution(n: usize, r_bound: f64, samples: u64) -> f64 {
    wall_density(r_bound, n) * 2.0 * r_bound * math::sphere_area(n) / 2.0 / samples as f64
}

/// Monte Carlo integral over walls with `|r| <= r_bound`, counting each wall once.
///
/// `integrand(u, out)` receives the raw chart vector `u = (sinh r, cosh r·ω)`
/// and writes `outputs` values; all outputs share the same wall sample.
pub fn integrate_walls<E, F>(
    n: usize,
    r_bound: f64,
    outputs: usize,
    cfg: &IntegrationConfig,
    exec: &E,
    integrand: F,
) -> Result<Vec<MeasureEstimate>>
where
    E: Executor,
    F: Fn(&[f64], &mut [f64]) + Sync + Send,
{
    check_dim(n)?;
    if cfg.samples < MIN_MC_SAMPLES {
        return Err(Error::InvalidConfig(format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {}",
            cfg.samples
        )));
    }
    if !(r_bound.is_finite() && r_bound > 0.0) {
        return Err(Error::InvalidConfig(format!("radial bound must be positive, got {r_bound}")));
    }
    let chunks = cfg.samples.div_ceil(CHUNK_SIZE);
    let scale = 2.0 * r_bound * math::sphere_area(n) / 2.0;
    let per_chunk = exec.map(chunks as usize, |chunk| {
        let mut rng = stream(cfg.seed, chunk as u64);
        let start = chunk as u64 * CHUNK_SIZE;
        let count = CHUNK_SIZE.min(cfg.samples - start);
        let mut moments = Moments::new(outputs);
        let mut u = vec![0.0; n + 1];
        let mut out = vec![0.0; outputs];
        for _ in 0..count {
            let r = -r_bound + 2.0 * r_bound * rng.random::<f64>();
            let mut norm2 = 0.0;
            for c in u[1..].iter_mut() {
                *c = rng.sample(StandardNormal);
                norm2 += *c * *c;
            }
            let ch = cosh(r);
            let s = ch / sqrt(norm2);
            u[1..].iter_mut().for_each(|c| *c *= s);
            u[0] = sinh(r);
            out.iter_mut().for_each(|o| *o = 0.0);
            integrand(&u, &mut out);
            let w = wall_density(r, n) * scale;
            out.iter_mut().for_each(|o| *o *= w);
            moments.push(&out);
        }
        moments
    });
    let mut total = Moments::new(outputs);
    for m in &per_chunk {
        total.merge(m);
    }
    Ok(total.estimates())
}

/// `∫_{S^{n-1}} f(ω) dω` by the angular rules (n = 2, 3 only).
///
/// The circle uses `θ` measured from `e1`; the 2-sphere uses `e1` as polar
/// axis with the polar range split at the equator. Integrands built from the
/// canonical pair `(o, a_t o)` have their only kink on `ω1 = 0`, which both
/// rules then place on a panel boundary.
pub fn integrate_sphere<F: FnMut(&[f64]) -> f64>(n: usize, nodes: usize, mut f: F) -> Result<f64> {
    let tau = core::f64::consts::TAU;
    match n {
        2 => {
            let h = tau / nodes as f64;
            let sum: f64 = (0..nodes)
                .map(|k| {
                    let theta = k as f64 * h;
                    f(&[cos(theta), sin(theta)])
                })
                .sum();
            Ok(sum * h)
        }
        3 => {
            let half = nodes.div_ceil(2);
            let polar = GaussLegendre::new(half);
            let h = tau / nodes as f64;
            let mut total = 0.0;
            for (lo, hi) in [(0.0, core::f64::consts::FRAC_PI_2), (core::f64::consts::FRAC_PI_2, core::f64::consts::PI)]
            {
                total += polar.integrate(lo, hi, |phi| {
                    let (c, s) = (cos(phi), sin(phi));
                    let ring: f64 = (0..nodes)
                        .map(|k| {
                            let psi = k as f64 * h;
                            f(&[c, s * cos(psi), s * sin(psi)])
                        })
                        .sum();
                    ring * h * s
                });
            }
            Ok(total)
        }
        _ => Err(Error::InvalidConfig(format!("quadrature is only available for n = 2, 3 (got n = {n})"))),
    }
}

/// Chart radius at which the wall family with normal direction `ω` passes through `p`.
#[inline]
fn crossing_radius(p: &[f64], omega: &[f64]) -> f64 {
    atanh(math::dot(&p[1..], omega) / p[0])
}

fn cosh_power_integral(rule: &GaussLegendre, a: f64, b: f64, n: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    rule.integrate(a, b, |r| wall_density(r, n))
}

/// Quadrature of the walls selected by a radial interval per direction.
///
/// `interval(ω)` returns the signed `r`-interval of selected walls for that
/// direction, or `None`.
fn quadrature_walls<F>(n: usize, nodes: usize, mut interval: F) -> Result<MeasureEstimate>
where
    F: FnMut(&[f64]) -> Option<(f64, f64)>,
{
    let rule = GaussLegendre::new(R_NODES);
    let mut evaluations = 0u64;
    let total = integrate_sphere(n, nodes, |omega| {
        evaluations += 1;
        interval(omega).map_or(0.0, |(a, b)| abs(cosh_power_integral(&rule, a, b, n)))
    })?;
    Ok(MeasureEstimate {
        value: 0.5 * total,
        stderr: 0.0,
        samples: evaluations * R_NODES as u64,
        method: Method::Quadrature,
    })
}

fn check_same_dim(x: &HyperbolicPoint, y: &HyperbolicPoint) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    Ok(())
}

/// A transform `g` with `g·x = o` and `g·y = a_t·o` (boost along axis 1), and `t = d(x, y)`.
pub fn canonicalize_pair(x: &HyperbolicPoint, y: &HyperbolicPoint) -> Result<(LorentzTransform, f64)> {
    check_same_dim(x, y)?;
    let t = hyperbolic_distance(x, y);
    if t <= COINCIDENT_TOL {
        return Err(Error::Degenerate("cannot canonicalize coincident points"));
    }
    let n = x.dim();
    let to_origin = translation_to(x).inverse();
    let moved = to_origin.apply_raw(y.coords());
    let spatial = &moved[1..];
    let len = math::norm(spatial);
    let dir: Vec<f64> = spatial.iter().map(|c| c / len).collect();
    // Householder reflection sending dir to e1, then flip the last axis to land in SO(n).
    let mut v = dir.clone();
    v[0] -= 1.0;
    let vv = math::dot(&v, &v);
    let mut rot = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { 1.0 } else { 0.0 };
            rot[i * n + j] = if vv > 1e-30 { delta - 2.0 * v[i] * v[j] / vv } else { delta };
        }
    }
    if vv > 1e-30 {
        for j in 0..n {
            rot[(n - 1) * n + j] = -rot[(n - 1) * n + j];
        }
    }
    let g = LorentzTransform::from_spatial_rotation(n, &rot)?.compose(&to_origin)?;
    Ok((g, t))
}

/// The canonical pair `(o, a_t·o)` as raw coordinates.
fn canonical_pair(n: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    let mut o = vec![0.0; n + 1];
    o[0] = 1.0;
    let mut y = vec![0.0; n + 1];
    y[0] = cosh(t);
    y[1] = sinh(t);
    (o, y)
}

fn separating_in_coords<E: Executor>(
    n: usize,
    x: &[f64],
    y: &[f64],
    r_bound: f64,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<MeasureEstimate> {
    match cfg.method {
        Method::MonteCarlo => {
            let eps = cfg.eps_side;
            let est = integrate_walls(n, r_bound, 1, cfg, exec, |u, out| {
                out[0] = if separates_raw(u, x, y, eps) { 1.0 } else { 0.0 };
            })?;
            Ok(est[0])
        }
        Method::Quadrature => {
            quadrature_walls(n, cfg.nodes, |omega| Some((crossing_radius(x, omega), crossing_radius(y, omega))))
        }
    }
}

/// `F(t) = μ{walls separating o and a_t·o}`.
pub fn measure_separating_at_distance<E: Executor>(
    n: usize,
    t: f64,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<MeasureEstimate> {
    cfg.validate(n)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidConfig(format!("distance must be finite and >= 0, got {t}")));
    }
    if t <= COINCIDENT_TOL {
        return Ok(MeasureEstimate::zero(cfg.method));
    }
    let (o, y) = canonical_pair(n, t);
    separating_in_coords(n, &o, &y, t + cfg.r_margin, cfg, exec)
}

/// `F(x, y) = μ{walls separating x and y}`, computed on the canonical pair
/// at distance `d(x, y)`.
pub fn measure_separating<E: Executor>(
    x: &HyperbolicPoint,
    y: &HyperbolicPoint,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<MeasureEstimate> {
    check_same_dim(x, y)?;
    let n = x.dim();
    cfg.validate(n)?;
    let t = match canonicalize_pair(x, y) {
        Ok((_, t)) => t,
        Err(Error::Degenerate(_)) => return Ok(MeasureEstimate::zero(cfg.method)),
        Err(e) => return Err(e),
    };
    measure_separating_at_distance(n, t, cfg, exec)
}

/// `F(x, y)` integrated directly in the given coordinates, with no reduction
/// to the canonical pair. The radial domain is `max(d(o,x), d(o,y)) + r_margin`.
///
/// Comparing this against transformed inputs tests the invariance of the
/// measure itself rather than of the reduction.
pub fn measure_separating_in_frame<E: Executor>(
    x: &HyperbolicPoint,
    y: &HyperbolicPoint,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<MeasureEstimate> {
    check_same_dim(x, y)?;
    let n = x.dim();
    cfg.validate(n)?;
    if hyperbolic_distance(x, y) <= COINCIDENT_TOL {
        return Ok(MeasureEstimate::zero(cfg.method));
    }
    let o = HyperbolicPoint::origin(n)?;
    let bound = o.distance(x).max(o.distance(y)) + cfg.r_margin;
    separating_in_coords(n, x.coords(), y.coords(), bound.max(COINCIDENT_TOL), cfg, exec)
}

/// `μ(S_x ∩ S_y)` where `S_p` is the set of walls separating `p` from `base`.
pub fn measure_joint_separating<E: Executor>(
    x: &HyperbolicPoint,
    y: &HyperbolicPoint,
    base: &HyperbolicPoint,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<MeasureEstimate> {
    check_same_dim(x, y)?;
    check_same_dim(x, base)?;
    let n = x.dim();
    cfg.validate(n)?;
    let to_base = translation_to(base).inverse();
    let xb = to_base.apply_point(x);
    let yb = to_base.apply_point(y);
    let o = HyperbolicPoint::origin(n)?;
    let reach = o.distance(&xb).max(o.distance(&yb));
    if reach <= COINCIDENT_TOL {
        return Ok(MeasureEstimate::zero(cfg.method));
    }
    let (xc, yc, oc) = (xb.coords(), yb.coords(), o.coords());
    match cfg.method {
        Method::MonteCarlo => {
            let eps = cfg.eps_side;
            let est = integrate_walls(n, reach + cfg.r_margin, 1, cfg, exec, |u, out| {
                let both = separates_raw(u, xc, oc, eps) && separates_raw(u, yc, oc, eps);
                out[0] = if both { 1.0 } else { 0.0 };
            })?;
            Ok(est[0])
        }
        Method::Quadrature => quadrature_walls(n, cfg.nodes, |omega| {
            // Both sets start at r = 0 (the base); they overlap iff they leave on the same side.
            let (rx, ry) = (crossing_radius(xc, omega), crossing_radius(yc, omega));
            if rx * ry > 0.0 {
                Some((0.0, if rx > 0.0 { rx.min(ry) } else { rx.max(ry) }))
            } else {
                None
            }
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::lorentz::{apply_point, boost, random_lorentz, random_point, RandomLorentzConfig};
    use crate::rng::{derive_seed, stream};

    fn origin(n: usize) -> HyperbolicPoint {
        HyperbolicPoint::origin(n).unwrap()
    }

    fn along(n: usize, t: f64) -> HyperbolicPoint {
        apply_point(&boost(n, t, 1).unwrap(), &origin(n))
    }

    #[test]
    fn config_validation() {
        assert!(IntegrationConfig::monte_carlo(999, 0).validate(2).is_err());
        assert!(IntegrationConfig::monte_carlo(1000, 0).validate(2).is_ok());
        assert!(IntegrationConfig::quadrature(31).validate(2).is_err());
        assert!(IntegrationConfig::quadrature(32).validate(3).is_ok());
        assert!(IntegrationConfig::quadrature(64).validate(4).is_err());
        let bad = IntegrationConfig { r_margin: -1.0, ..Default::default() };
        assert!(bad.validate(2).is_err());
        assert_eq!(IntegrationConfig::default().validate(9), Err(Error::UnsupportedDimension(9)));
    }

    #[test]
    fn sphere_rules_integrate_polynomials() {
        let pi = core::f64::consts::PI;
        assert!((integrate_sphere(2, 64, |_| 1.0).unwrap() - 2.0 * pi).abs() < 1e-13);
        assert!((integrate_sphere(3, 64, |_| 1.0).unwrap() - 4.0 * pi).abs() < 1e-12);
        // ∫_{S^2} ω1² = 4π/3, ∫_{S^1} ω2⁴ = 3π/4.
        assert!((integrate_sphere(3, 64, |w| w[0] * w[0]).unwrap() - 4.0 * pi / 3.0).abs() < 1e-12);
        assert!((integrate_sphere(2, 64, |w| w[1].powi(4)).unwrap() - 0.75 * pi).abs() < 1e-13);
        assert!(integrate_sphere(4, 64, |_| 1.0).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let o = origin(3);
        let y = along(3, 2.0);
        let (g, t) = canonicalize_pair(&o, &y).unwrap();
        assert!((t - 2.0).abs() < 1e-14);
        let gy = g.apply_point(&y);
        assert!((gy.coords()[0] - cosh(2.0)).abs() < 1e-12);
        assert!(canonicalize_pair(&o, &o).is_err());

        let mut rng = stream(4, 0);
        let cfg = RandomLorentzConfig::default();
        for n in 2..=6 {
            for _ in 0..30 {
                let h = random_lorentz(n, &mut rng, &cfg).unwrap();
                let x = random_point(n, &mut rng, &cfg).unwrap();
                let y = h.apply_point(&x);
                if x.distance(&y) < 1e-6 {
                    continue;
                }
                let (g, t) = canonicalize_pair(&x, &y).unwrap();
                let gx = g.apply_point(&x);
                let gy = g.apply_point(&y);
                let target = along(n, t);
                assert!(gx.distance(&origin(n)) < 1e-8);
                for (a, b) in gy.coords().iter().zip(target.coords()) {
                    assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
                }
                assert!((gy.coords()[0] - cosh(t)).abs() <= 1e-8 * cosh(t));
            }
        }
    }

    #[test]
    fn separating_measure_basic_cases() {
        let o = origin(2);
        let cfg = IntegrationConfig::monte_carlo(20_000, 1);
        let zero = measure_separating(&o, &o, &cfg, &Sequential).unwrap();
        assert_eq!((zero.value, zero.stderr), (0.0, 0.0));
        let y = along(2, 1.0);
        let q = measure_separating(&o, &y, &IntegrationConfig::quadrature(512), &Sequential).unwrap();
        assert!((q.value - 2.0).abs() < 0.005 * 2.0);
        assert_eq!(q.stderr, 0.0);
    }

    #[test]
    fn monte_carlo_is_deterministic_and_executor_independent() {
        struct Reversed;
        impl Executor for Reversed {
            fn map<T: Send, F: Fn(usize) -> T + Sync + Send>(&self, count: usize, job: F) -> Vec<T> {
                let mut out: Vec<(usize, T)> = (0..count).rev().map(|i| (i, job(i))).collect();
                out.sort_by_key(|(i, _)| *i);
                out.into_iter().map(|(_, t)| t).collect()
            }
        }
        let (x, y) = (origin(3), along(3, 1.3));
        let cfg = IntegrationConfig::monte_carlo(30_001, 99);
        let a = measure_separating(&x, &y, &cfg, &Sequential).unwrap();
        let b = measure_separating(&x, &y, &cfg, &Sequential).unwrap();
        let c = measure_separating(&x, &y, &cfg, &Reversed).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.value.to_bits(), c.value.to_bits());
        assert_eq!(a.stderr.to_bits(), c.stderr.to_bits());
        assert_eq!(a.samples, 30_001);
    }

    #[test]
    fn quadrature_and_monte_carlo_agree_on_random_pairs() {
        let mut rng = stream(77, 0);
        let pts = RandomLorentzConfig::default();
        for k in 0..50 {
            let x = random_point(2, &mut rng, &pts).unwrap();
            let y = random_point(2, &mut rng, &pts).unwrap();
            let q = measure_separating(&x, &y, &IntegrationConfig::quadrature(256), &Sequential).unwrap();
            let mc_cfg = IntegrationConfig::monte_carlo(20_000, derive_seed(5, 0, k));
            let mc = measure_separating(&x, &y, &mc_cfg, &Sequential).unwrap();
            assert!((q.value - mc.value).abs() <= 3.0 * mc.stderr.max(1e-12), "pair {k}: {q:?} vs {mc:?}");
        }
    }

    #[test]
    fn in_frame_quadrature_matches_canonical() {
        let mut rng = stream(78, 0);
        let pts = RandomLorentzConfig::default();
        for n in [2, 3] {
            for _ in 0..5 {
                let x = random_point(n, &mut rng, &pts).unwrap();
                let y = random_point(n, &mut rng, &pts).unwrap();
                let cfg = IntegrationConfig::quadrature(256);
                let a = measure_separating(&x, &y, &cfg, &Sequential).unwrap();
                let b = measure_separating_in_frame(&x, &y, &cfg, &Sequential).unwrap();
                assert!((a.value - b.value).abs() < 1e-3 * a.value, "n={n} {a:?} {b:?}");
            }
        }
    }

    #[test]
    fn widening_the_radial_domain_changes_nothing_beyond_noise() {
        let y = along(3, 1.5);
        let narrow = IntegrationConfig::monte_carlo(100_000, 3);
        let wide = IntegrationConfig { r_margin: 1.0, ..narrow.clone() };
        let a = measure_separating(&origin(3), &y, &narrow, &Sequential).unwrap();
        let b = measure_separating(&origin(3), &y, &wide, &Sequential).unwrap();
        assert!((a.value - b.value).abs() <= 3.0 * combined_stderr(&[a.stderr, b.stderr]));
    }

    #[test]
    fn dead_zone_width_is_immaterial() {
        let y = along(2, 0.8);
        let base = IntegrationConfig::monte_carlo(50_000, 8);
        let values: Vec<MeasureEstimate> = [0.0, 1e-12, 1e-9]
            .iter()
            .map(|&eps| {
                let cfg = IntegrationConfig { eps_side: eps, ..base.clone() };
                measure_separating(&origin(2), &y, &cfg, &Sequential).unwrap()
            })
            .collect();
        for v in &values[1..] {
            assert!((v.value - values[0].value).abs() <= 3.0 * combined_stderr(&[v.stderr, values[0].stderr]));
        }
    }

    #[test]
    fn positive_at_three_sigma() {
        for n in 2..=5 {
            let cfg = IntegrationConfig::monte_carlo(100_000, n as u64);
            for t in [0.1, 1.0, 3.0] {
                let est = measure_separating(&origin(n), &along(n, t), &cfg, &Sequential).unwrap();
                assert!(est.value - 3.0 * est.stderr > 0.0, "n={n} t={t}: {est:?}");
            }
        }
    }

    #[test]
    fn joint_measure_cases() {
        let n = 2;
        let o = origin(n);
        let x = along(n, 1.2);
        let cfg = IntegrationConfig::monte_carlo(50_000, 12);
        let joint = measure_joint_separating(&x, &x, &o, &cfg, &Sequential).unwrap();
        let single = measure_separating(&x, &o, &cfg.with_seed(13), &Sequential).unwrap();
        assert!((joint.value - single.value).abs() <= 3.0 * combined_stderr(&[joint.stderr, single.stderr]));

        let opposite = along(n, -0.9);
        let disjoint = measure_joint_separating(&x, &opposite, &o, &cfg, &Sequential).unwrap();
        assert!(disjoint.value <= 3.0 * disjoint.stderr);

        let q = IntegrationConfig::quadrature(512);
        let jq = measure_joint_separating(&x, &opposite, &o, &q, &Sequential).unwrap();
        assert_eq!(jq.value, 0.0);
        let jq = measure_joint_separating(&x, &x, &o, &q, &Sequential).unwrap();
        assert!((jq.value - 2.4).abs() < 1e-3);
    }

    #[test]
    fn joint_measure_matches_inclusion_exclusion() {
        // μ(S_x ∩ S_y) = (μ(S_x) + μ(S_y) − μ(S_x Δ S_y)) / 2, all three terms
        // estimated on one shared wall sample.
        let mut rng = stream(31, 0);
        let pts = RandomLorentzConfig { t_min: -2.0, t_max: 2.0 };
        let n = 2;
        let o = origin(n);
        for k in 0..5 {
            let x = random_point(n, &mut rng, &pts).unwrap();
            let y = random_point(n, &mut rng, &pts).unwrap();
            let cfg = IntegrationConfig::monte_carlo(60_000, 100 + k);
            let reach = o.distance(&x).max(o.distance(&y)) + cfg.r_margin;
            let (xc, yc, oc) = (x.coords(), y.coords(), o.coords());
            let parts = integrate_walls(n, reach, 3, &cfg, &Sequential, |u, out| {
                let sx = separates_raw(u, xc, oc, cfg.eps_side);
                let sy = separates_raw(u, yc, oc, cfg.eps_side);
                out[0] = f64::from(u8::from(sx));
                out[1] = f64::from(u8::from(sy));
                out[2] = f64::from(u8::from(sx != sy));
            })
            .unwrap();
            let oracle = (parts[0].value + parts[1].value - parts[2].value) / 2.0;
            let oracle_err = combined_stderr(&[parts[0].stderr, parts[1].stderr, parts[2].stderr]) / 2.0;
            let direct = measure_joint_separating(&x, &y, &o, &cfg.with_seed(900 + k), &Sequential).unwrap();
            let tol = 3.0 * combined_stderr(&[oracle_err, direct.stderr]);
            assert!((direct.value - oracle).abs() <= tol, "case {k}: {} vs {oracle}", direct.value);

            let q = measure_joint_separating(&x, &y, &o, &IntegrationConfig::quadrature(1024), &Sequential).unwrap();
            assert!((q.value - oracle).abs() <= 3.0 * oracle_err + 1e-3, "quadrature case {k}");
        }
    }
}
