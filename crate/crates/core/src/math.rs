//! Thin wrappers over `libm` so the rest of the crate reads like `std` float code.

pub(crate) use libm::{asinh, atanh, cos, cosh, fabs as abs, hypot, log, log1p, sin, sinh, sqrt};

/// `x^k` for small non-negative integer `k`.
pub(crate) fn powi(x: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Euclidean norm without intermediate overflow.
pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, &x| hypot(acc, x))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Surface area of the unit sphere `S^{n-1}` in `R^n`.
pub(crate) fn sphere_area(n: usize) -> f64 {
    let pi = core::f64::consts::PI;
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * pi,
        _ => 2.0 * pi / (n as f64 - 2.0) * sphere_area(n - 2),
    }
}
