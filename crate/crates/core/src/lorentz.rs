//! Minkowski space `R^{n,1}`, the hyperboloid model and the Lorentz group.
//!
//! Coordinate 0 is timelike: `<x, y> = -x0 y0 + x1 y1 + ... + xn yn`.
//! Hyperbolic n-space is the upper sheet `{<x,x> = -1, x0 > 0}` with distance
//! `d(x, y) = arccosh(-<x, y>)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::math::{self, abs, cosh, hypot, log, log1p, sinh, sqrt};
use crate::{check_dim, Error, Result, EPS_ALG};

/// Points closer than this are treated as coincident.
pub const COINCIDENT_TOL: f64 = 1e-10;

/// A vector of `R^{n+1}` carrying the signature (n,1) form.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiVector {
    coords: Vec<f64>,
}

impl MinkowskiVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_dim(coords.len().saturating_sub(1))?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    /// The `i`-th standard basis vector of `R^{n+1}`.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        check_dim(n)?;
        if i > n {
            return Err(Error::AxisOutOfRange { axis: i, n });
        }
        let mut coords = vec![0.0; n + 1];
        coords[i] = 1.0;
        Ok(Self { coords })
    }

    /// Hyperbolic dimension `n` (the vector has `n + 1` coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn inner(&self, other: &Self) -> Result<f64> {
        minkowski_inner(self, other)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { coords: self.coords.iter().map(|c| c * s).collect() }
    }
}

/// `<x, y> = -x0 y0 + sum_i xi yi`.
pub fn minkowski_inner(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<f64> {
    if x.coords.len() != y.coords.len() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    Ok(inner(&x.coords, &y.coords))
}

#[inline]
pub(crate) fn inner(a: &[f64], b: &[f64]) -> f64 {
    -a[0] * b[0] + math::dot(&a[1..], &b[1..])
}

/// A point of the upper sheet.
///
/// Stored with the timelike coordinate recomputed as `hypot(1, |x̄|)`, so the
/// point lies on the sheet to rounding even when `x0` is astronomically large.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicPoint {
    v: MinkowskiVector,
}

impl HyperbolicPoint {
    /// Validate and snap onto the sheet.
    ///
    /// The sheet condition is checked relative to `x0²`, since `<x,x>` is a
    /// difference of two numbers of that size.
    pub fn new(v: MinkowskiVector) -> Result<Self> {
        let x0 = v.coords[0];
        let defect = abs(inner(&v.coords, &v.coords) + 1.0) / f64::max(1.0, x0 * x0);
        if defect > EPS_ALG || x0 < 1.0 - EPS_ALG {
            return Err(Error::NotOnSheet { defect });
        }
        Ok(Self::lift(v.coords))
    }

    /// The point with the given spatial coordinates `(x1, ..., xn)`.
    pub fn from_spatial(spatial: &[f64]) -> Result<Self> {
        check_dim(spatial.len())?;
        if spatial.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut coords = Vec::with_capacity(spatial.len() + 1);
        coords.push(0.0);
        coords.extend_from_slice(spatial);
        Ok(Self::lift(coords))
    }

    /// Basepoint `o = (1, 0, ..., 0)`.
    pub fn origin(n: usize) -> Result<Self> {
        Ok(Self { v: MinkowskiVector::basis(n, 0)? })
    }

    pub(crate) fn lift(mut coords: Vec<f64>) -> Self {
        coords[0] = hypot(1.0, math::norm(&coords[1..]));
        Self { v: MinkowskiVector { coords } }
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    pub fn coords(&self) -> &[f64] {
        &self.v.coords
    }

    pub fn as_vector(&self) -> &MinkowskiVector {
        &self.v
    }

    pub fn distance(&self, other: &Self) -> f64 {
        hyperbolic_distance(self, other)
    }

    pub fn is_origin(&self) -> bool {
        self.v.coords[1..].iter().all(|&c| c == 0.0)
    }
}

/// `arccosh(z)` that stays accurate near 1 and does not overflow for large `z`.
///
/// Arguments below 1 (roundoff in `-<x,y>`) are clamped to 1.
pub fn stable_acosh(z: f64) -> f64 {
    let z = f64::max(z, 1.0);
    if z < 1.25 {
        let w = z - 1.0;
        log1p(w + sqrt(2.0 * w + w * w))
    } else if z < 1e150 {
        log(z + sqrt((z - 1.0) * (z + 1.0)))
    } else {
        log(z) + core::f64::consts::LN_2
    }
}

/// `d(x, y) = arccosh(-<x, y>)`.
///
/// # Panics
/// If the points live in different dimensions.
pub fn hyperbolic_distance(x: &HyperbolicPoint, y: &HyperbolicPoint) -> f64 {
    assert_eq!(x.dim(), y.dim(), "points of different dimension");
    if x.coords() == y.coords() {
        return 0.0;
    }
    stable_acosh(-inner(x.coords(), y.coords()))
}

/// An orthochronous element of O(n,1), stored row-major as an `(n+1)×(n+1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    n: usize,
    m: Vec<f64>,
}

impl LorentzTransform {
    /// Validate a candidate matrix.
    ///
    /// If the form defect exceeds `EPS_ALG / 10` one Minkowski Gram–Schmidt
    /// pass is applied to the columns before the final check against `EPS_ALG`.
    pub fn new(n: usize, m: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        let size = n + 1;
        if m.len() != size * size {
            return Err(Error::DimensionMismatch { left: m.len(), right: size * size });
        }
        if m.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut t = Self { n, m };
        if t.form_defect() > EPS_ALG / 10.0 {
            t.reorthonormalize()?;
        }
        let defect = t.form_defect();
        if defect > EPS_ALG {
            return Err(Error::NotLorentz { defect });
        }
        if t.m[0] <= 0.0 {
            return Err(Error::NotOrthochronous);
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        let size = n + 1;
        let mut m = vec![0.0; size * size];
        for i in 0..size {
            m[i * size + i] = 1.0;
        }
        Ok(Self { n, m })
    }

    /// Embed a spatial `n×n` row-major orthogonal matrix as `diag(1, R)`.
    pub fn from_spatial_rotation(n: usize, rot: &[f64]) -> Result<Self> {
        check_dim(n)?;
        if rot.len() != n * n {
            return Err(Error::DimensionMismatch { left: rot.len(), right: n * n });
        }
        let size = n + 1;
        let mut m = vec![0.0; size * size];
        m[0] = 1.0;
        for i in 0..n {
            for j in 0..n {
                m[(i + 1) * size + j + 1] = rot[i * n + j];
            }
        }
        Self::new(n, m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.size() + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.m
    }

    /// Largest entry of `|ΛᵀJΛ − J|`, each entry relative to the matching entry
    /// of `|Λ|ᵀ|Λ|` (floored at 1) so that large boosts are judged fairly.
    pub fn form_defect(&self) -> f64 {
        let size = self.size();
        let mut worst: f64 = 0.0;
        for i in 0..size {
            for j in i..size {
                let mut acc = 0.0;
                let mut scale = 0.0;
                for k in 0..size {
                    let a = self.m[k * size + i];
                    let b = self.m[k * size + j];
                    let sign = if k == 0 { -1.0 } else { 1.0 };
                    acc += sign * a * b;
                    scale += abs(a * b);
                }
                let target = match (i, j) {
                    (0, 0) => -1.0,
                    _ if i == j => 1.0,
                    _ => 0.0,
                };
                worst = worst.max(abs(acc - target) / f64::max(1.0, scale));
            }
        }
        worst
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.size()).map(|i| self.m[i * self.size() + j]).collect()
    }

    fn reorthonormalize(&mut self) -> Result<()> {
        let size = self.size();
        let mut cols: Vec<Vec<f64>> = (0..size).map(|j| self.column(j)).collect();
        for j in 0..size {
            let (done, rest) = cols.split_at_mut(j);
            let c = &mut rest[0];
            for (k, prev) in done.iter().enumerate() {
                // prev has norm -1 (k = 0) or +1.
                let sign = if k == 0 { -1.0 } else { 1.0 };
                let proj = sign * inner(c, prev);
                for (ci, pi) in c.iter_mut().zip(prev) {
                    *ci -= proj * pi;
                }
            }
            let q = inner(c, c);
            let ok = if j == 0 { q < 0.0 } else { q > 0.0 };
            if !ok {
                return Err(Error::NotLorentz { defect: f64::INFINITY });
            }
            let s = sqrt(abs(q));
            c.iter_mut().for_each(|ci| *ci /= s);
        }
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                self.m[i * size + j] = *v;
            }
        }
        Ok(())
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let size = self.size();
        let mut m = vec![0.0; size * size];
        for i in 0..size {
            for k in 0..size {
                let a = self.m[i * size + k];
                for j in 0..size {
                    m[i * size + j] += a * other.m[k * size + j];
                }
            }
        }
        Self::new(self.n, m)
    }

    /// `Λ⁻¹ = J Λᵀ J`.
    pub fn inverse(&self) -> Self {
        let size = self.size();
        let mut m = vec![0.0; size * size];
        for i in 0..size {
            for j in 0..size {
                let sign = if (i == 0) != (j == 0) { -1.0 } else { 1.0 };
                m[i * size + j] = sign * self.m[j * size + i];
            }
        }
        Self { n: self.n, m }
    }

    /// Plain matrix–vector product, no renormalization.
    pub fn apply_raw(&self, v: &[f64]) -> Vec<f64> {
        let size = self.size();
        assert_eq!(v.len(), size, "vector of wrong dimension");
        (0..size).map(|i| math::dot(&self.m[i * size..(i + 1) * size], v)).collect()
    }

    pub fn apply_point(&self, x: &HyperbolicPoint) -> HyperbolicPoint {
        apply_point(self, x)
    }
}

/// `g·x`, snapped back onto the sheet.
///
/// # Panics
/// If `g` and `x` have different dimensions.
pub fn apply_point(g: &LorentzTransform, x: &HyperbolicPoint) -> HyperbolicPoint {
    HyperbolicPoint::lift(g.apply_raw(x.coords()))
}

/// The boost `a_t` along spatial `axis` (1-based), with `a_t·o = (cosh t, .., sinh t, ..)`.
pub fn boost(n: usize, t: f64, axis: usize) -> Result<LorentzTransform> {
    check_dim(n)?;
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut g = LorentzTransform::identity(n)?;
    let size = n + 1;
    let (c, s) = (cosh(t), sinh(t));
    g.m[0] = c;
    g.m[axis] = s;
    g.m[axis * size] = s;
    g.m[axis * size + axis] = c;
    Ok(g)
}

/// The pure translation carrying `o` to `x` along their geodesic.
pub(crate) fn translation_to(x: &HyperbolicPoint) -> LorentzTransform {
    let n = x.dim();
    let size = n + 1;
    let c = x.coords();
    let mut m = vec![0.0; size * size];
    m[0] = c[0];
    for i in 1..size {
        m[i] = c[i];
        m[i * size] = c[i];
        for j in 1..size {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i * size + j] = delta + c[i] * c[j] / (1.0 + c[0]);
        }
    }
    LorentzTransform { n, m }
}

/// Parameters for [`random_lorentz`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomLorentzConfig {
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for RandomLorentzConfig {
    fn default() -> Self {
        Self { t_min: -3.0, t_max: 3.0 }
    }
}

/// Haar-random element of SO(n) as a row-major `n×n` matrix.
fn haar_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    // Columns of a Gaussian matrix, orthonormalized by modified Gram–Schmidt.
    let mut cols: Vec<Vec<f64>> =
        (0..n).map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()).collect();
    for j in 0..n {
        let (done, rest) = cols.split_at_mut(j);
        let c = &mut rest[0];
        for prev in done.iter() {
            let p = math::dot(c, prev);
            c.iter_mut().zip(prev).for_each(|(ci, pi)| *ci -= p * pi);
        }
        let s = math::norm(c);
        c.iter_mut().for_each(|ci| *ci /= s);
    }
    let mut m = vec![0.0; n * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m[i * n + j] = *v;
        }
    }
    if determinant(&m, n) < 0.0 {
        for i in 0..n {
            m[i * n] = -m[i * n];
        }
    }
    m
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(a: &[f64], n: usize) -> f64 {
    let mut m = a.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| abs(m[i * n + col]).total_cmp(&abs(m[j * n + col]))).unwrap_or(col);
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det *= p;
        for row in col + 1..n {
            let f = m[row * n + col] / p;
            for k in col..n {
                m[row * n + k] -= f * m[col * n + k];
            }
        }
    }
    det
}

/// Uniformly random rotation of the spatial block (fixes `o`).
pub fn random_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LorentzTransform> {
    check_dim(n)?;
    LorentzTransform::from_spatial_rotation(n, &haar_rotation(n, rng))
}

/// `R1 · boost(t, 1) · R2` with Haar rotations `R1, R2` and `t` uniform on the
/// configured range.
pub fn random_lorentz<R: Rng + ?Sized>(n: usize, rng: &mut R, cfg: &RandomLorentzConfig) -> Result<LorentzTransform> {
    check_dim(n)?;
    if !(cfg.t_min.is_finite() && cfg.t_max.is_finite()) || cfg.t_min > cfg.t_max {
        return Err(Error::InvalidConfig(alloc::format!(
            "boost range [{}, {}] is empty or non-finite",
            cfg.t_min,
            cfg.t_max
        )));
    }
    let r1 = random_rotation(n, rng)?;
    let u: f64 = rng.random();
    let t = cfg.t_min + (cfg.t_max - cfg.t_min) * u;
    let r2 = random_rotation(n, rng)?;
    r1.compose(&boost(n, t, 1)?)?.compose(&r2)
}

/// A random point at distance at most `|t_max|` from `o`: `random_lorentz · o`.
pub fn random_point<R: Rng + ?Sized>(n: usize, rng: &mut R, cfg: &RandomLorentzConfig) -> Result<HyperbolicPoint> {
    Ok(apply_point(&random_lorentz(n, rng, cfg)?, &HyperbolicPoint::origin(n)?))
}

/// The point at arclength `s·d(x, y)` from `x` on the geodesic towards `y`.
pub fn geodesic_point(x: &HyperbolicPoint, y: &HyperbolicPoint, s: f64) -> Result<HyperbolicPoint> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    let d = hyperbolic_distance(x, y);
    if d <= COINCIDENT_TOL {
        return Err(Error::Degenerate("geodesic between coincident points"));
    }
    if s == 0.0 {
        return Ok(x.clone());
    }
    if s == 1.0 {
        return Ok(y.clone());
    }
    let (xc, yc) = (x.coords(), y.coords());
    let xy = inner(xc, yc);
    // Unit tangent at x pointing to y; its Minkowski norm is sinh d.
    let tangent: Vec<f64> = xc.iter().zip(yc).map(|(a, b)| b + xy * a).collect();
    let sigma = s * d;
    let (c, sh) = (cosh(sigma), sinh(sigma) / sinh(d));
    let coords = xc.iter().zip(&tangent).map(|(a, v)| c * a + sh * v).collect();
    Ok(HyperbolicPoint::lift(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn origin(n: usize) -> HyperbolicPoint {
        HyperbolicPoint::origin(n).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let o = MinkowskiVector::basis(3, 0).unwrap();
        let e1 = MinkowskiVector::basis(3, 1).unwrap();
        assert_eq!(minkowski_inner(&o, &o).unwrap(), -1.0);
        assert_eq!(minkowski_inner(&e1, &e1).unwrap(), 1.0);
        let x = MinkowskiVector::new(vec![cosh(1.0), sinh(1.0), 0.0]).unwrap();
        let o2 = MinkowskiVector::basis(2, 0).unwrap();
        // -cosh 1, from a 40-digit evaluation.
        let expected = -1.543_080_634_815_243_8;
        assert!((minkowski_inner(&x, &o2).unwrap() - expected).abs() < 1e-15);
        assert_eq!(minkowski_inner(&o, &o2), Err(Error::DimensionMismatch { left: 3, right: 2 }));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert_eq!(MinkowskiVector::new(vec![1.0, 0.0]), Err(Error::UnsupportedDimension(1)));
        assert_eq!(MinkowskiVector::new(vec![1.0, f64::NAN, 0.0]), Err(Error::NonFinite));
        let below = MinkowskiVector::new(vec![-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(HyperbolicPoint::new(below), Err(Error::NotOnSheet { .. })));
        let off = MinkowskiVector::new(vec![2.0, 0.0, 0.0]).unwrap();
        assert!(matches!(HyperbolicPoint::new(off), Err(Error::NotOnSheet { .. })));
    }

    #[test]
    fn stable_acosh_matches_reference() {
        // Values from 40-digit evaluation.
        assert_eq!(stable_acosh(1.0), 0.0);
        assert_eq!(stable_acosh(0.999_999), 0.0);
        let z = 1.0 + libm::ldexp(1.0, -33);
        assert!((stable_acosh(z) - 1.525_878_906_235_197e-5).abs() < 1e-19);
        assert!((stable_acosh(2.0) - 1.316_957_896_924_816_7).abs() < 1e-15);
        for t in [0.1_f64, 0.5, 1.0, 5.0, 20.0, 100.0, 300.0, 600.0, 700.0] {
            let rel = (stable_acosh(cosh(t)) - t).abs() / t;
            assert!(rel < 1e-13, "t = {t}: rel {rel:e}");
        }
    }

    #[test]
    fn boost_examples() {
        let id = LorentzTransform::identity(3).unwrap();
        assert_eq!(boost(3, 0.0, 1).unwrap(), id);
        let p = boost(3, 1.0, 1).unwrap().apply_point(&origin(3));
        assert!((p.coords()[0] - cosh(1.0)).abs() < 1e-15);
        assert!((p.coords()[1] - sinh(1.0)).abs() < 1e-15);
        assert_eq!(&p.coords()[2..], &[0.0, 0.0]);
        let b1 = boost(3, 1.0, 1).unwrap();
        let b2 = b1.compose(&b1).unwrap();
        let direct = boost(3, 2.0, 1).unwrap();
        for (a, b) in b2.as_slice().iter().zip(direct.as_slice()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(boost(3, 1.0, 0), Err(Error::AxisOutOfRange { axis: 0, n: 3 }));
        assert_eq!(boost(3, 1.0, 4), Err(Error::AxisOutOfRange { axis: 4, n: 3 }));
    }

    #[test]
    fn boost_group_law() {
        for n in 2..=5 {
            for &(s, t) in &[(1.0, 2.0), (-3.5, 7.25), (10.0, -10.0), (9.9, 0.1), (-10.0, -10.0)] {
                let lhs = boost(n, s, 1).unwrap().compose(&boost(n, t, 1).unwrap()).unwrap();
                let rhs = boost(n, s + t, 1).unwrap();
                // Entries reach cosh(20) ~ 2.4e8, so the bound is relative to entry size.
                for (a, b) in lhs.as_slice().iter().zip(rhs.as_slice()) {
                    assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn large_boosts_are_valid_transforms() {
        for t in [50.0, 300.0, 700.0] {
            let b = boost(2, t, 2).unwrap();
            assert!(b.form_defect() < 1e-15);
            let checked = LorentzTransform::new(2, b.as_slice().to_vec()).unwrap();
            assert_eq!(checked, b);
        }
    }

    #[test]
    fn random_lorentz_is_reproducible_and_valid() {
        let cfg = RandomLorentzConfig::default();
        for n in 2..=8 {
            let a = random_lorentz(n, &mut stream(11, n as u64), &cfg).unwrap();
            let b = random_lorentz(n, &mut stream(11, n as u64), &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.form_defect() <= 1e-9);
            let p = a.apply_point(&origin(n));
            assert!(p.coords()[0] >= 1.0);
        }
    }

    #[test]
    fn rotations_have_unit_determinant() {
        let mut rng = stream(5, 0);
        for n in 2..=6 {
            for _ in 0..20 {
                let r = haar_rotation(n, &mut rng);
                assert!((determinant(&r, n) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inverse_undoes_transform() {
        let mut rng = stream(9, 1);
        let g = random_lorentz(4, &mut rng, &RandomLorentzConfig::default()).unwrap();
        let prod = g.compose(&g.inverse()).unwrap();
        let id = LorentzTransform::identity(4).unwrap();
        for (a, b) in prod.as_slice().iter().zip(id.as_slice()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_lorentz_matrix() {
        let m = vec![1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0];
        // One Gram–Schmidt pass repairs pure scaling.
        assert!(LorentzTransform::new(2, m).is_ok());
        let flipped = vec![-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        assert_eq!(LorentzTransform::new(2, flipped), Err(Error::NotOrthochronous));
        let singular = vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
        assert!(matches!(LorentzTransform::new(2, singular), Err(Error::NotLorentz { .. })));
    }

    #[test]
    fn geodesic_examples() {
        let o = origin(3);
        let y = boost(3, 2.0, 1).unwrap().apply_point(&o);
        let mid = geodesic_point(&o, &y, 0.5).unwrap();
        let expected = boost(3, 1.0, 1).unwrap().apply_point(&o);
        for (a, b) in mid.coords().iter().zip(expected.coords()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(geodesic_point(&o, &y, 0.0).unwrap(), o);
        assert_eq!(geodesic_point(&o, &y, 1.0).unwrap(), y);
        assert_eq!(geodesic_point(&o, &o, 0.5), Err(Error::Degenerate("geodesic between coincident points")));
    }

    #[test]
    fn distance_along_boosts() {
        let o = origin(2);
        assert_eq!(hyperbolic_distance(&o, &o), 0.0);
        for t in [0.5, 1.0, 5.0, 20.0, -7.0] {
            let p = boost(2, t, 1).unwrap().apply_point(&o);
            assert!((hyperbolic_distance(&o, &p) - f64::abs(t)).abs() <= 1e-14 * f64::abs(t));
        }
    }
}
