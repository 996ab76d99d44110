//! Conditionally negative kernels from hyperbolic distance.
//!
//! A symmetric matrix `D` is conditionally negative (CN) on a sample when
//! `λᵀDλ <= 0` for every `λ` with `Σλ = 0`. The *defect* is the largest value
//! of `λᵀDλ` over unit such `λ`: the top eigenvalue of `PᵀDP` for an
//! orthonormal basis `P` of the sum-zero hyperplane.
//!
//! The group kernel is `K(g, h) = d(g·o, h·o)`; the wall embedding
//! `Φ(x) = 1{walls separating x from o}` realizes `c·d(x, y) = ‖Φ(x) − Φ(y)‖²`,
//! which [`hilbert_identity_check`] tests by Monte Carlo.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::crofton::{Deviation, ROW_SIGMAS};
use crate::eigen::symmetric_eigenvalues;
use crate::exec::Executor;
use crate::lorentz::{apply_point, boost, HyperbolicPoint, LorentzTransform};
use crate::math::{abs, sqrt};
use crate::measure::{combined_stderr, integrate_walls, mc_resolution, IntegrationConfig, MeasureEstimate, Method};
use crate::wall::separates_raw;
use crate::{hyperbolic_distance, Error, Result};

/// CN tolerance relative to `max |D_ij|`.
pub const CNK_REL_TOL: f64 = 1e-8;
pub const MAX_SET_POINTS: usize = 64;

/// Largest `|t|` at which the sweep asserts `K(a_t, e) = |t|`.
pub const SWEEP_CHECKED_T: f64 = 300.0;
pub const SWEEP_REL_TOL: f64 = 1e-12;
/// Beyond this `cosh t` approaches the largest double.
pub const OVERFLOW_T: f64 = 700.0;

/// Absolute slack for identities whose two sides vanish together.
const ROUNDOFF_FLOOR: f64 = 1e-12;

/// A symmetric `m×m` kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    m: usize,
    data: Vec<f64>,
}

impl KernelMatrix {
    pub fn new(m: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != m * m {
            return Err(Error::DimensionMismatch { left: data.len(), right: m * m });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let k = Self { m, data };
        let scale = k.max_abs().max(1.0);
        for i in 0..m {
            for j in i + 1..m {
                if abs(k.get(i, j) - k.get(j, i)) > 1e-12 * scale {
                    return Err(Error::InvalidConfig(format!("kernel matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(k)
    }

    /// Pairwise hyperbolic distances.
    pub fn from_points(points: &[HyperbolicPoint]) -> Self {
        let m = points.len();
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let d = hyperbolic_distance(&points[i], &points[j]);
                data[i * m + j] = d;
                data[j * m + i] = d;
            }
        }
        Self { m, data }
    }

    /// `K(g_i, g_j)` for a sample of group elements.
    pub fn from_group(elements: &[LorentzTransform]) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Ok(Self { m: 0, data: Vec::new() });
        };
        let o = HyperbolicPoint::origin(first.dim())?;
        let orbit: Vec<HyperbolicPoint> = elements.iter().map(|g| apply_point(g, &o)).collect();
        Ok(Self::from_points(&orbit))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(abs(*v)))
    }

    /// `λᵀDλ`.
    pub fn quadratic_form(&self, lambda: &[f64]) -> f64 {
        (0..self.m).map(|i| lambda[i] * (0..self.m).map(|j| self.get(i, j) * lambda[j]).sum::<f64>()).sum()
    }
}

/// The default CN tolerance for `d`: `1e-8 · max |D_ij|`.
pub fn cnk_tolerance(d: &KernelMatrix) -> f64 {
    CNK_REL_TOL * d.max_abs()
}

/// Helmert basis of `{Σλ = 0}`: column `k` is `(1, .., 1, −k, 0, ..) / sqrt(k(k+1))`
/// with `k` leading ones. Returned as `m × (m−1)` row-major.
fn sum_zero_basis(m: usize) -> Vec<f64> {
    let cols = m - 1;
    let mut p = vec![0.0; m * cols];
    for k in 1..m {
        let norm = sqrt((k * (k + 1)) as f64);
        for i in 0..k {
            p[i * cols + (k - 1)] = 1.0 / norm;
        }
        p[k * cols + (k - 1)] = -(k as f64) / norm;
    }
    p
}

/// `PᵀDP` for the Helmert basis, `(m−1) × (m−1)` row-major.
pub fn projected_kernel(d: &KernelMatrix) -> Vec<f64> {
    let m = d.m;
    let cols = m - 1;
    let p = sum_zero_basis(m);
    let mut dp = vec![0.0; m * cols];
    for i in 0..m {
        for k in 0..m {
            let dik = d.get(i, k);
            if dik == 0.0 {
                continue;
            }
            for j in 0..cols {
                dp[i * cols + j] += dik * p[k * cols + j];
            }
        }
    }
    let mut out = vec![0.0; cols * cols];
    for a in 0..cols {
        for b in 0..cols {
            out[a * cols + b] = (0..m).map(|i| p[i * cols + a] * dp[i * cols + b]).sum();
        }
    }
    // Symmetrize away rounding.
    for a in 0..cols {
        for b in a + 1..cols {
            let s = 0.5 * (out[a * cols + b] + out[b * cols + a]);
            out[a * cols + b] = s;
            out[b * cols + a] = s;
        }
    }
    out
}

/// `max { λᵀDλ : |λ| = 1, Σλ = 0 }`.
pub fn cnk_defect(d: &KernelMatrix) -> Result<f64> {
    if d.m < 2 {
        return Err(Error::InvalidConfig(format!("CN defect needs at least 2 points, got {}", d.m)));
    }
    let eig = symmetric_eigenvalues(&projected_kernel(d), d.m - 1);
    Ok(eig[eig.len() - 1])
}

/// Largest `λᵀDλ` over `probes` random unit sum-zero vectors.
pub fn random_probe_max<R: Rng + ?Sized>(d: &KernelMatrix, probes: usize, rng: &mut R) -> f64 {
    let m = d.m;
    let mut lambda = vec![0.0; m];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..probes {
        lambda.iter_mut().for_each(|l| *l = rng.sample(StandardNormal));
        let mean = lambda.iter().sum::<f64>() / m as f64;
        lambda.iter_mut().for_each(|l| *l -= mean);
        let norm = sqrt(lambda.iter().map(|l| l * l).sum());
        if norm == 0.0 {
            continue;
        }
        lambda.iter_mut().for_each(|l| *l /= norm);
        best = best.max(d.quadratic_form(&lambda));
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct CnkRow {
    pub points: usize,
    pub defect: f64,
    pub tolerance: f64,
    pub max_entry: f64,
    /// Largest random-probe value, when probes were run.
    pub probe_max: Option<f64>,
    pub pass: bool,
}

impl CnkRow {
    /// The random probes never beat the eigenvalue bound by more than `1e-10`.
    pub fn probes_consistent(&self) -> bool {
        self.probe_max.map_or(true, |p| p <= self.defect + 1e-10)
    }
}

/// Build `D` from the points, compute its defect and optionally cross-check
/// with `probes` random sum-zero vectors.
pub fn set_cnk_suite<R: Rng + ?Sized>(points: &[HyperbolicPoint], probes: usize, rng: &mut R) -> Result<CnkRow> {
    if !(2..=MAX_SET_POINTS).contains(&points.len()) {
        return Err(Error::InvalidConfig(format!(
            "set CN suite takes 2..={MAX_SET_POINTS} points, got {}",
            points.len()
        )));
    }
    let d = KernelMatrix::from_points(points);
    let defect = cnk_defect(&d)?;
    let tolerance = cnk_tolerance(&d);
    let probe_max = (probes > 0).then(|| random_probe_max(&d, probes, rng));
    let mut row = CnkRow { points: points.len(), defect, tolerance, max_entry: d.max_abs(), probe_max, pass: false };
    row.pass = defect <= tolerance && row.probes_consistent();
    Ok(row)
}

/// `ψ(g) = d(o, g·o)`.
pub fn psi(g: &LorentzTransform) -> f64 {
    let o = HyperbolicPoint::origin(g.dim()).expect("transform dimension is valid");
    hyperbolic_distance(&o, &apply_point(g, &o))
}

/// `K(g, h) = d(g·o, h·o)`.
///
/// # Panics
/// If `g` and `h` act in different dimensions.
pub fn group_kernel(g: &LorentzTransform, h: &LorentzTransform) -> f64 {
    let o = HyperbolicPoint::origin(g.dim()).expect("transform dimension is valid");
    hyperbolic_distance(&apply_point(g, &o), &apply_point(h, &o))
}

/// `|K(gh, gk) − K(h, k)|`.
pub fn check_left_invariance(g: &LorentzTransform, h: &LorentzTransform, k: &LorentzTransform) -> Result<f64> {
    let gh = g.compose(h)?;
    let gk = g.compose(k)?;
    Ok(abs(group_kernel(&gh, &gk) - group_kernel(h, k)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub kernel: f64,
    /// `|K − |t|| / |t|` (absolute error at `t = 0`).
    pub relative_error: f64,
    /// Whether `|t|` is inside the range where the identity is asserted.
    pub checked: bool,
}

impl SweepRow {
    pub fn pass(&self) -> bool {
        !self.checked || self.relative_error <= SWEEP_REL_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// `K(a_t, e)` strictly increases with `|t|`.
    pub monotone: bool,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.monotone && self.rows.iter().all(SweepRow::pass)
    }
}

/// `K(a_t, e)` along the boost on axis 1.
pub fn unboundedness_sweep(n: usize, t_values: &[f64]) -> Result<SweepReport> {
    if t_values.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one t".into()));
    }
    if let Some(&t) = t_values.iter().find(|t| !t.is_finite() || abs(**t) > OVERFLOW_T) {
        return Err(Error::Overflow { t });
    }
    let e = LorentzTransform::identity(n)?;
    let mut rows = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let kernel = group_kernel(&boost(n, t, 1)?, &e);
        let at = abs(t);
        let relative_error = if at == 0.0 { kernel } else { abs(kernel - at) / at };
        rows.push(SweepRow { t, kernel, relative_error, checked: at <= SWEEP_CHECKED_T });
    }
    let mut by_size: Vec<&SweepRow> = rows.iter().collect();
    by_size.sort_by(|a, b| abs(a.t).total_cmp(&abs(b.t)));
    let monotone = by_size.windows(2).all(|w| abs(w[1].t) == abs(w[0].t) || w[1].kernel > w[0].kernel);
    Ok(SweepReport { rows, monotone })
}

/// One entry of the embedding Gram matrix `G_ij = μ(S_i ∩ S_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramEntry {
    pub i: usize,
    pub j: usize,
    pub estimate: MeasureEstimate,
    /// `c · (d(x_i, o) + d(x_j, o) − d(x_i, x_j)) / 2`.
    pub expected: f64,
    pub expected_stderr: f64,
    /// Weight of a single hit; floors the estimate's standard error.
    pub resolution: f64,
}

impl Deviation for GramEntry {
    fn deviation(&self) -> f64 {
        self.estimate.value - self.expected
    }

    fn combined_stderr(&self) -> f64 {
        combined_stderr(&[self.estimate.stderr.max(self.resolution), self.expected_stderr])
    }

    fn floor(&self) -> f64 {
        ROUNDOFF_FLOOR
    }
}

impl GramEntry {
    pub fn pass(&self) -> bool {
        self.within(ROW_SIGMAS)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HilbertCheck {
    /// `c · Σ λ_i λ_j d(x_i, x_j)`.
    pub lhs: f64,
    /// `−2 ‖Σ λ_i Φ(x_i)‖²`.
    pub rhs: f64,
    pub lhs_stderr: f64,
    pub rhs_stderr: f64,
    pub gram: Vec<GramEntry>,
    pub samples: u64,
}

impl Deviation for HilbertCheck {
    fn deviation(&self) -> f64 {
        self.lhs - self.rhs
    }

    fn combined_stderr(&self) -> f64 {
        combined_stderr(&[self.lhs_stderr, self.rhs_stderr])
    }

    fn floor(&self) -> f64 {
        ROUNDOFF_FLOOR * (1.0 + abs(self.lhs))
    }
}

impl HilbertCheck {
    pub fn pass(&self) -> bool {
        self.within(ROW_SIGMAS)
    }

    pub fn gram_pass(&self) -> bool {
        self.gram.iter().all(GramEntry::pass)
    }
}

/// Check `Σ λ_i λ_j c·d(x_i, x_j) = −2 ‖Σ λ_i Φ(x_i)‖²` for sum-zero `λ`,
/// with `Φ` relative to the basepoint `o`.
///
/// The right side and the Gram entries `μ(S_i ∩ S_j)` are estimated on one
/// shared wall sample. `c_hat` and its standard error come from the Crofton fit.
pub fn hilbert_identity_check<E: Executor>(
    points: &[HyperbolicPoint],
    lambda: &[f64],
    c_hat: f64,
    c_stderr: f64,
    cfg: &IntegrationConfig,
    exec: &E,
) -> Result<HilbertCheck> {
    let m = points.len();
    if m == 0 || lambda.len() != m {
        return Err(Error::InvalidConfig(format!("{m} points but {} weights", lambda.len())));
    }
    if abs(lambda.iter().sum::<f64>()) > 1e-12 {
        return Err(Error::InvalidConfig("weights must sum to zero".into()));
    }
    if cfg.method != Method::MonteCarlo {
        return Err(Error::InvalidConfig("the embedding check is Monte Carlo only".into()));
    }
    let n = points[0].dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch { left: n, right: p.dim() });
    }
    cfg.validate(n)?;
    let o = HyperbolicPoint::origin(n)?;

    let mut form = 0.0;
    for i in 0..m {
        for j in 0..m {
            form += lambda[i] * lambda[j] * hyperbolic_distance(&points[i], &points[j]);
        }
    }
    let radial: Vec<f64> = points.iter().map(|p| hyperbolic_distance(p, &o)).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let reach = radial.iter().copied().fold(0.0, f64::max);

    let resolution = if reach == 0.0 { 0.0 } else { mc_resolution(n, reach + cfg.r_margin, cfg.samples) };
    let (rhs, rhs_stderr, estimates, samples) = if reach == 0.0 {
        // Every Φ(x_i) vanishes.
        let zero = MeasureEstimate { samples: cfg.samples, ..MeasureEstimate::zero(Method::MonteCarlo) };
        (0.0, 0.0, vec![zero; pairs.len()], cfg.samples)
    } else {
        let coords: Vec<&[f64]> = points.iter().map(HyperbolicPoint::coords).collect();
        let oc = o.coords();
        let eps = cfg.eps_side;
        let est = integrate_walls(n, reach + cfg.r_margin, 1 + pairs.len(), cfg, exec, |u, out| {
            let mut inside = [false; crate::cnk::MAX_SET_POINTS];
            let mut combo = 0.0;
            for (i, x) in coords.iter().enumerate() {
                inside[i] = separates_raw(u, x, oc, eps);
                if inside[i] {
                    combo += lambda[i];
                }
            }
            out[0] = combo * combo;
            for (slot, &(i, j)) in out[1..].iter_mut().zip(&pairs) {
                *slot = if inside[i] && inside[j] { 1.0 } else { 0.0 };
            }
        })?;
        (-2.0 * est[0].value, 2.0 * est[0].stderr, est[1..].to_vec(), est[0].samples)
    };

    let gram = pairs
        .iter()
        .zip(estimates)
        .map(|(&(i, j), estimate)| {
            let gromov = 0.5 * (radial[i] + radial[j] - hyperbolic_distance(&points[i], &points[j]));
            GramEntry { i, j, estimate, expected: c_hat * gromov, expected_stderr: c_stderr * abs(gromov), resolution }
        })
        .collect();

    Ok(HilbertCheck { lhs: c_hat * form, rhs, lhs_stderr: c_stderr * abs(form), rhs_stderr, gram, samples })
}
