//! Walls of hyperbolic space as points of de Sitter space.
//!
//! A unit spacelike vector `u` (`<u,u> = 1`) cuts the sheet in the totally
//! geodesic hyperplane `P_u = {x : <x,u> = 0}`; `u` and `-u` give the same
//! wall, so a [`Wall`] stores a canonical representative. The chart
//! `u = (sinh r, cosh r · ω)` with `r ∈ R`, `ω ∈ S^{n-1}` covers de Sitter space
//! once and, for a wall, `r` is the signed distance from `o` to the wall.

use alloc::vec::Vec;

use crate::lorentz::{inner, HyperbolicPoint, LorentzTransform};
use crate::math::{self, abs, asinh, cosh, hypot, powi, sinh};
use crate::{check_dim, Error, Result, EPS_ALG, EPS_SIDE};

/// Coordinates below this magnitude are skipped when fixing the sign.
pub const EPS_SIGN: f64 = 1e-12;

/// A totally geodesic hyperplane, stored as a canonical unit de Sitter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Wall {
    u: Vec<f64>,
}

impl Wall {
    /// Validate a de Sitter vector, snap it onto `<u,u> = 1` and canonicalize its sign.
    pub fn new(u: Vec<f64>) -> Result<Self> {
        check_dim(u.len().saturating_sub(1))?;
        if u.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let defect = abs(inner(&u, &u) - 1.0) / f64::max(1.0, u[0] * u[0]);
        if defect > EPS_ALG {
            return Err(Error::NotDeSitter { defect });
        }
        Ok(Self::normalized(u))
    }

    /// Rescale the spatial part so that `|ū|² = 1 + u0²`, then fix the sign.
    fn normalized(mut u: Vec<f64>) -> Self {
        let spatial = math::norm(&u[1..]);
        let target = hypot(1.0, u[0]);
        u[1..].iter_mut().for_each(|c| *c *= target / spatial);
        if let Some(&first) = u.iter().find(|c| abs(**c) > EPS_SIGN) {
            if first < 0.0 {
                u.iter_mut().for_each(|c| *c = -*c);
            }
        }
        Self { u }
    }

    pub fn dim(&self) -> usize {
        self.u.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.u
    }

    pub fn side(&self, x: &HyperbolicPoint) -> i8 {
        side(self, x)
    }

    pub fn separates(&self, x: &HyperbolicPoint, y: &HyperbolicPoint) -> bool {
        separates(self, x, y)
    }
}

/// Chart coordinates `(r, ω)` of a de Sitter point.
#[derive(Debug, Clone, PartialEq)]
pub struct WallChart {
    pub r: f64,
    omega: Vec<f64>,
}

impl WallChart {
    pub fn new(r: f64, omega: Vec<f64>) -> Result<Self> {
        check_dim(omega.len())?;
        if !r.is_finite() || omega.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm2 = math::dot(&omega, &omega);
        let defect = abs(norm2 - 1.0);
        if defect > EPS_ALG {
            return Err(Error::NotUnit { defect });
        }
        let norm = math::sqrt(norm2);
        let omega = omega.into_iter().map(|c| c / norm).collect();
        Ok(Self { r, omega })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }
}

/// `u = ±(sinh r, cosh r · ω)`, canonicalized.
pub fn wall_from_chart(c: &WallChart) -> Wall {
    let mut u = Vec::with_capacity(c.omega.len() + 1);
    u.push(sinh(c.r));
    let ch = cosh(c.r);
    u.extend(c.omega.iter().map(|w| ch * w));
    Wall::normalized(u)
}

/// `r = asinh(u0)`, `ω = ū / cosh r`.
pub fn chart_from_wall(u: &Wall) -> Result<WallChart> {
    let r = asinh(u.u[0]);
    let spatial = math::norm(&u.u[1..]);
    if spatial == 0.0 || !spatial.is_finite() {
        return Err(Error::Degenerate("de Sitter vector with vanishing spatial part"));
    }
    // |ū| = cosh r for a unit vector; dividing by the measured norm keeps ω exactly unit.
    let omega = u.u[1..].iter().map(|c| c / spatial).collect();
    Ok(WallChart { r, omega })
}

/// Sign of `<x, u>` for a raw (not necessarily canonical) de Sitter vector,
/// with a dead zone of half-width `eps_side`.
pub fn side_of(u: &[f64], x: &HyperbolicPoint, eps_side: f64) -> i8 {
    sign_with_dead_zone(inner(x.coords(), u), eps_side)
}

#[inline]
pub(crate) fn sign_with_dead_zone(v: f64, eps: f64) -> i8 {
    if v > eps {
        1
    } else if v < -eps {
        -1
    } else {
        0
    }
}

/// Side of `x` relative to `u`, with the default dead zone.
///
/// Only meaningful up to a global flip; compare sides with [`separates`].
pub fn side(u: &Wall, x: &HyperbolicPoint) -> i8 {
    side_of(&u.u, x, EPS_SIDE)
}

/// Strictly opposite sides; a point on the wall is never separated.
pub fn separates(u: &Wall, x: &HyperbolicPoint, y: &HyperbolicPoint) -> bool {
    separates_with(u, x, y, EPS_SIDE)
}

pub fn separates_with(u: &Wall, x: &HyperbolicPoint, y: &HyperbolicPoint, eps_side: f64) -> bool {
    side_of(&u.u, x, eps_side) * side_of(&u.u, y, eps_side) == -1
}

/// Raw-slice separation test used by the samplers.
#[inline]
pub(crate) fn separates_raw(u: &[f64], x: &[f64], y: &[f64], eps_side: f64) -> bool {
    sign_with_dead_zone(inner(x, u), eps_side) * sign_with_dead_zone(inner(y, u), eps_side) == -1
}

/// Density of the invariant wall measure in the chart: `cosh^{n-1} r`.
pub fn wall_density(r: f64, n: usize) -> f64 {
    powi(cosh(r), n.saturating_sub(1))
}

/// Distance from `x` to the hyperplane `P_u`: `asinh |<x, u>|`.
pub fn point_wall_distance(u: &Wall, x: &HyperbolicPoint) -> f64 {
    asinh(abs(inner(x.coords(), &u.u)))
}

/// `g·u`, renormalized and canonicalized.
pub fn apply_wall(g: &LorentzTransform, u: &Wall) -> Wall {
    Wall::normalized(g.apply_raw(&u.u))
}
