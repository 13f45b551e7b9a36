//! Gauss-Legendre quadrature on an interval.
//!
//! Rules are built by Newton iteration on the Legendre recurrence and are
//! exact for polynomials of degree 2n−1. The eigenfunction normalization
//! integral is the crate's only quadrature customer: its integrand is
//! entire on an interval of length 2α^(1/3) ≤ 20, so a single fixed-order
//! panel (64 points by default) is already far below 1e-12 relative error —
//! tests verify that by panel splitting rather than by adaptivity.

use crate::error::{Error, Result};

/// Default order used for the normalization cross-check.
pub const DEFAULT_ORDER: usize = 64;

const MIN_ORDER: usize = 2;
const MAX_ORDER: usize = 128;

/// Nodes and weights of an n-point Gauss-Legendre rule on (−1, 1), nodes
/// ascending and exactly mirror-symmetric (`nodes[i] == -nodes[n-1-i]`
/// bitwise), weights positive with Σw = 2.
#[derive(Clone, Debug)]
pub struct GaussRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the rule of the given order (2..=128).
    ///
    /// Roots of the Legendre polynomial are found by Newton iteration from
    /// the Chebyshev-angle guesses cos(π(i−1/4)/(n+1/2)), to an increment
    /// tolerance of 1e-15; weights are 2/((1−x²)·Pₙ′(x)²). Only the
    /// positive half is computed, the negative half is mirrored bitwise so
    /// the symmetry invariant holds exactly.
    pub fn new(order: usize) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::Domain(format!(
                "Gauss-Legendre order {order} outside {MIN_ORDER}..={MAX_ORDER}"
            )));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];

        // Upper-half roots (x > 0), plus the center node for odd n.
        for i in 0..n / 2 {
            // i-th root counting from x = +1 inward is the (i+1)-th
            // Chebyshev angle.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut converged = false;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence {
                    iterations: 100,
                    residual: legendre_with_derivative(n, x).0,
                });
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            let hi = n - 1 - i;
            nodes[hi] = x;
            weights[hi] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        if n % 2 == 1 {
            let mid = n / 2;
            let (_, dp) = legendre_with_derivative(n, 0.0);
            nodes[mid] = 0.0;
            weights[mid] = 2.0 / (dp * dp);
        }
        Ok(GaussRule {
            order,
            nodes,
            weights,
        })
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.order
    }

    #[must_use]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[must_use]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// (Pₙ(x), Pₙ′(x)) by the three-term recurrence and the standard
/// derivative identity Pₙ′ = n(x·Pₙ − Pₙ₋₁)/(x² − 1).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// ∫ₐᵇ f, by the affine-mapped rule.
///
/// Nodes are consumed in mirror pairs so the result is *exactly*
/// antisymmetric under swapping `a` and `b` (the pair sums are identical
/// floating-point operations either way; only the sign of the half-length
/// flips).
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, rule: &GaussRule) -> f64 {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let n = rule.order;
    let mut acc = 0.0;
    for i in 0..n / 2 {
        let j = n - 1 - i;
        acc += rule.weights[i] * (f(center + half * rule.nodes[i]) + f(center + half * rule.nodes[j]));
    }
    if n % 2 == 1 {
        let mid = n / 2;
        acc += rule.weights[mid] * f(center + half * rule.nodes[mid]);
    }
    half * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_two_point_rule() {
        let r = GaussRule::new(2).unwrap();
        let inv_sqrt3 = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r.nodes()[0], -inv_sqrt3, max_relative = 1e-15);
        assert_relative_eq!(r.nodes()[1], inv_sqrt3, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[1], 1.0, max_relative = 1e-15);
    }

    #[test]
    fn classical_three_point_rule() {
        let r = GaussRule::new(3).unwrap();
        let x = (3.0f64 / 5.0).sqrt();
        assert_relative_eq!(r.nodes()[0], -x, max_relative = 1e-15);
        assert_eq!(r.nodes()[1], 0.0);
        assert_relative_eq!(r.nodes()[2], x, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 5.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(r.weights()[1], 8.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(r.weights()[2], 5.0 / 9.0, max_relative = 1e-14);
    }

    #[test]
    fn weights_sum_to_two_for_every_order() {
        for order in MIN_ORDER..=MAX_ORDER {
            let r = GaussRule::new(order).unwrap();
            let sum: f64 = r.weights().iter().sum();
            assert!(
                (sum - 2.0).abs() < 1e-14,
                "order {order}: Σw = {sum:.17}"
            );
            assert!(r.weights().iter().all(|&w| w > 0.0), "order {order}");
            assert!(
                r.nodes().iter().all(|&x| (-1.0..1.0).contains(&x)),
                "order {order}"
            );
            // Exact mirror symmetry; the self-mirrored center of an odd
            // rule is exactly zero (negating it would flip the sign bit).
            for i in 0..order {
                let j = order - 1 - i;
                if i == j {
                    assert_eq!(r.nodes()[i].to_bits(), 0.0f64.to_bits(), "order {order}");
                } else {
                    assert_eq!(
                        r.nodes()[i].to_bits(),
                        (-r.nodes()[j]).to_bits(),
                        "order {order} node {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn monomial_exactness_to_degree_2n_minus_1() {
        for order in [2usize, 3, 5, 8, 16, 64] {
            let r = GaussRule::new(order).unwrap();
            for j in 0..=(2 * order - 1) {
                let got = integrate(|x| x.powi(j as i32), -1.0, 1.0, &r);
                let want = if j % 2 == 1 { 0.0 } else { 2.0 / (j as f64 + 1.0) };
                assert!(
                    (got - want).abs() < 1e-12,
                    "order {order}, x^{j}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn known_integrals() {
        let r8 = GaussRule::new(8).unwrap();
        assert!((integrate(|x| x * x, 0.0, 1.0, &r8) - 1.0 / 3.0).abs() < 1e-14);
        let r16 = GaussRule::new(16).unwrap();
        assert!((integrate(f64::sin, 0.0, PI, &r16) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn order_out_of_range_is_rejected() {
        for bad in [0usize, 1, 129, 1000] {
            assert!(matches!(GaussRule::new(bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn panel_split_agrees_on_smooth_integrand() {
        let r = GaussRule::new(DEFAULT_ORDER).unwrap();
        let f = |x: f64| (x * x * 0.5).exp() * (3.0 * x).cos();
        let whole = integrate(f, -1.3, 2.1, &r);
        let mid = 0.5 * (-1.3 + 2.1);
        let split = integrate(f, -1.3, mid, &r) + integrate(f, mid, 2.1, &r);
        assert!(
            ((whole - split) / whole).abs() < 1e-12,
            "whole {whole}, split {split}"
        );
    }

    #[test]
    fn antisymmetry_is_bitwise() {
        let r = GaussRule::new(DEFAULT_ORDER).unwrap();
        let f = |x: f64| (x - 0.2).exp() * x.cos();
        let fwd = integrate(f, -0.75, 2.25, &r);
        let rev = integrate(f, 2.25, -0.75, &r);
        assert_eq!(fwd.to_bits(), (-rev).to_bits());
    }

    proptest! {
        /// integrate(f, a, b) == -integrate(f, b, a) exactly (IEEE equality;
        /// a == b yields ±0.0 which compare equal).
        #[test]
        fn exact_antisymmetry(a in -10.0f64..10.0, b in -10.0f64..10.0, ord in 2usize..40) {
            let r = GaussRule::new(ord).unwrap();
            let f = |x: f64| (1.3 * x).sin() + 0.25 * x * x;
            let fwd = integrate(f, a, b, &r);
            let rev = integrate(f, b, a, &r);
            prop_assert_eq!(fwd, -rev);
        }

        /// Affine exactness on arbitrary intervals: degree-3 polynomial
        /// integrated by any rule of order >= 2. Tolerance scales with the
        /// magnitudes that enter the cancellation.
        #[test]
        fn cubic_exact_on_any_interval(a in -5.0f64..5.0, len in 0.01f64..10.0) {
            let b = a + len;
            let r = GaussRule::new(2).unwrap();
            let got = integrate(|x| x * x * x - 2.0 * x + 1.0, a, b, &r);
            let anti = |x: f64| 0.25 * x.powi(4) - x * x + x;
            let want = anti(b) - anti(a);
            let scale = 1.0 + anti(a).abs() + anti(b).abs();
            prop_assert!((got - want).abs() < 1e-12 * scale,
                "got {} want {}", got, want);
        }
    }
}
