//! Hyperbolic n-space in the hyperboloid model, its space of walls (de Sitter
//! space modulo ±1), the invariant wall measure `cosh^{n-1} r dr dω`, and the
//! numerical machinery that checks the Crofton identity
//! `μ{walls separating x, y} = c(n)·d(x, y)` together with the resulting
//! conditionally negative kernel on SO(n,1).
//!
//! The crate is `no_std` and only needs `alloc`. Parallelism is injected by
//! callers through the [`Executor`] trait; every estimate is a pure function
//! of its inputs and seed, whatever executor runs it.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cnk;
pub mod crofton;
mod eigen;
mod error;
pub mod exec;
pub mod lorentz;
mod math;
pub mod measure;
pub mod quadrature;
pub mod rng;
pub mod wall;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use lorentz::{
    boost, geodesic_point, hyperbolic_distance, minkowski_inner, random_lorentz, random_rotation, stable_acosh,
    HyperbolicPoint, LorentzTransform, MinkowskiVector, RandomLorentzConfig,
};
pub use measure::{
    canonicalize_pair, measure_joint_separating, measure_separating, measure_separating_in_frame, IntegrationConfig,
    MeasureEstimate, Method,
};
pub use wall::{
    apply_wall, chart_from_wall, point_wall_distance, separates, side, wall_density, wall_from_chart, Wall, WallChart,
};

/// Algebraic tolerance for sheet membership, unit norms and Lorentz defects.
pub const EPS_ALG: f64 = 1e-9;

/// Default dead zone for the side predicate.
pub const EPS_SIDE: f64 = 1e-12;

/// Smallest supported hyperbolic dimension.
pub const MIN_DIM: usize = 2;

/// Largest supported hyperbolic dimension.
pub const MAX_DIM: usize = 8;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}
