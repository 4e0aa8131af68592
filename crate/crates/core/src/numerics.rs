//! Deterministic numerical kernels: log-domain Gaussian densities, a stable
//! log-sum-exp, and composite Gauss–Legendre quadrature on fixed panels.
//!
//! Every mixture density in this crate is handled in the log domain. For
//! amplitudes around six noise standard deviations the individual component
//! densities span more than fifteen decades, so they are combined only
//! through [`log_sum_exp`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `½ ln(2π)`.
pub const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Number of standard deviations the integration window extends past the
/// amplitude on each side. Gaussian tail mass beyond this is below 1e-14.
pub const TAIL_SIGMAS: f64 = 8.0;

/// Log-density of `N(mean, sigma²)` at `y`, in nats.
pub fn log_gaussian_pdf(y: f64, mean: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "standard deviation must be positive, got {sigma}"
        )));
    }
    Ok(log_gaussian_unchecked(y, mean, sigma))
}

#[inline]
pub(crate) fn log_gaussian_unchecked(y: f64, mean: f64, sigma: f64) -> f64 {
    let z = (y - mean) / sigma;
    -HALF_LN_2PI - sigma.ln() - 0.5 * z * z
}

/// `ln Σ exp(log_weight + log_value)` over the terms, evaluated with the
/// maximum subtracted so that nothing overflows.
pub fn log_sum_exp(terms: &[(f64, f64)]) -> Result<f64> {
    if terms.is_empty() {
        return Err(Error::domain("log_sum_exp of an empty list"));
    }
    let max = terms
        .iter()
        .map(|(lw, lv)| lw + lv)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || !max.is_finite() {
        return Ok(max);
    }
    let sum: f64 = terms.iter().map(|(lw, lv)| (lw + lv - max).exp()).sum();
    Ok(max + sum.ln())
}

/// Log-sum-exp over already-combined exponents. Callers guarantee a
/// nonempty slice.
#[inline]
pub(crate) fn log_sum_exp_slice(exponents: &[f64]) -> f64 {
    let max = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = exponents.iter().map(|e| (e - max).exp()).sum();
    max + sum.ln()
}

/// Panel count and per-panel order of a composite Gauss–Legendre rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub order: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 64,
            order: 10,
        }
    }
}

impl QuadratureSpec {
    /// Rule over `[-amplitude - 8σ, amplitude + 8σ]`, the window used for
    /// every output-density integral of a channel leg with noise `sigma`.
    pub fn channel_rule(&self, amplitude: f64, sigma: f64) -> Result<QuadratureRule> {
        let half_width = amplitude.abs() + TAIL_SIGMAS * sigma;
        build_rule(-half_width, half_width, self.panels, self.order)
    }
}

/// A composite quadrature rule: `∫ f ≈ Σ weights[k] · f(nodes[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Composite Gauss–Legendre rule with `panels` equal subintervals of
/// `[lo, hi]`, each carrying an `order`-point rule (exact for polynomials of
/// degree `2·order − 1` per panel).
pub fn build_rule(lo: f64, hi: f64, panels: usize, order: usize) -> Result<QuadratureRule> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!(
            "quadrature interval must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if panels == 0 || order == 0 {
        return Err(Error::domain(
            "quadrature needs at least one panel and order ≥ 1",
        ));
    }
    let (ref_nodes, ref_weights) = gauss_legendre(order);
    let width = (hi - lo) / panels as f64;
    let half = 0.5 * width;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + p as f64 * width;
        let mid = a + half;
        for (t, w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(mid + half * t);
            weights.push(half * w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        lo,
        hi,
    })
}

/// `Σ weights · f(nodes)`. A non-finite integrand value aborts with the
/// offending node.
pub fn integrate<F: Fn(f64) -> f64>(rule: &QuadratureRule, f: F) -> Result<f64> {
    let mut acc = 0.0;
    for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(y);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node: y, value: v });
        }
        acc += w * v;
    }
    Ok(acc)
}
