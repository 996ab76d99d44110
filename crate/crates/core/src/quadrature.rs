//! Gauss–Legendre rules.

use alloc::vec::Vec;

use crate::math::{abs, cos};

/// Nodes and weights of the `count`-point rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_count` by Newton iteration from the Tricomi initial guesses.
    pub fn new(count: usize) -> Self {
        assert!(count > 0, "empty Gauss–Legendre rule");
        let mut nodes = Vec::with_capacity(count);
        let mut weights = Vec::with_capacity(count);
        let nf = count as f64;
        for i in 0..count {
            let mut x = cos(core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                // Three-term recurrence for P_count(x) and P_{count-1}(x).
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=count {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let (p, pm1) = if count == 1 { (x, 1.0) } else { (p1, p0) };
                dp = nf * (x * p - pm1) / (x * x - 1.0);
                let step = p / dp;
                x -= step;
                if abs(step) < 1e-16 {
                    break;
                }
            }
            if count == 1 {
                dp = 1.0;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f` (orientation respected: `b < a` flips the sign).
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for count in [1, 2, 5, 32, 100, 257] {
            let g = GaussLegendre::new(count);
            assert!((g.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13, "{count}");
            assert!(g.nodes().iter().all(|x| x.abs() < 1.0));
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let g = GaussLegendre::new(6);
        for deg in 0..12_i32 {
            let got = g.integrate(0.0, 1.0, |x| x.powi(deg));
            assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "deg {deg}");
        }
    }

    #[test]
    fn cosh_power_is_resolved_to_machine_precision() {
        let g = GaussLegendre::new(32);
        let got = g.integrate(-1.5, 4.0, libm::cosh);
        let exact = libm::sinh(4.0) - libm::sinh(-1.5);
        assert!((got - exact).abs() < 1e-13 * exact);
        assert!((g.integrate(1.0, 0.0, |x| x) + 0.5).abs() < 1e-15);
    }
}
