//! Channel and input-distribution types, and the information functionals
//! built on them: output mixtures, mutual information, secrecy information
//! and the marginal information-density difference Ξ.
//!
//! Inputs are symmetric about the origin and stored by their nonnegative
//! half. A positive half-point `x` carries the total probability of the pair
//! `{-x, +x}`; a half-point at `0` carries the probability of the singleton.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{
    log_gaussian_unchecked, log_sum_exp_slice, QuadratureRule, QuadratureSpec, HALF_LN_2PI,
};

/// Tolerance on the total probability accepted by [`SymmetricInput::new`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Mutual-information values below zero by at most this much are treated as
/// quadrature noise and clamped.
pub const MI_CLAMP_TOL: f64 = 1e-9;

/// Noise standard deviations of the legitimate (`sigma1`) and eavesdropper
/// (`sigma2`) legs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelPair {
    sigma1: f64,
    sigma2: f64,
}

impl ChannelPair {
    pub fn new(sigma1: f64, sigma2: f64) -> Result<Self> {
        for (name, s) in [("sigma1", sigma1), ("sigma2", sigma2)] {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {s}"
                )));
            }
        }
        Ok(ChannelPair { sigma1, sigma2 })
    }

    /// Builds the pair from noise variances `σ₁²`, `σ₂²`.
    pub fn from_variances(var1: f64, var2: f64) -> Result<Self> {
        if !(var1 > 0.0) || !(var2 > 0.0) {
            return Err(Error::domain("noise variances must be positive"));
        }
        Self::new(var1.sqrt(), var2.sqrt())
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// True when the eavesdropper is strictly noisier than the legitimate
    /// receiver; otherwise the secrecy capacity is zero.
    pub fn is_degraded(&self) -> bool {
        self.sigma1 < self.sigma2
    }
}

/// A symmetric discrete distribution on `[-A, A]` stored by its nonnegative
/// half-support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricInput {
    amplitude: f64,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SymmetricInput {
    /// Validates and builds an input. Points must be strictly increasing in
    /// `[0, amplitude]`, weights positive and summing to one within
    /// [`NORMALIZATION_TOL`] (they are renormalized exactly).
    ///
    /// The last point need not equal the amplitude; solver iterates always
    /// satisfy that (see [`SymmetricInput::is_pinned`]), probes such as a
    /// point mass at zero do not.
    pub fn new(amplitude: f64, points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidInput(format!(
                "amplitude must be positive and finite, got {amplitude}"
            )));
        }
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "need matching nonempty point/weight lists, got {} points and {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some(&x) = points.iter().find(|&&x| !(0.0..=amplitude).contains(&x)) {
            return Err(Error::InvalidInput(format!(
                "half-point {x} outside [0, {amplitude}]"
            )));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "half-points must be strictly increasing".into(),
            ));
        }
        if let Some(&w) = weights.iter().find(|&&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidInput(format!("weight {w} is not positive")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidInput(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let weights = weights.into_iter().map(|w| w / total).collect();
        Ok(SymmetricInput {
            amplitude,
            points,
            weights,
        })
    }

    /// Transient states inside the optimizer may hold coincident points;
    /// those are resolved by clustering.
    pub(crate) fn from_parts(amplitude: f64, points: Vec<f64>, weights: Vec<f64>) -> Self {
        debug_assert_eq!(points.len(), weights.len());
        SymmetricInput {
            amplitude,
            points,
            weights,
        }
    }

    /// The two-point input `{±A}` with equal probabilities.
    pub fn antipodal(amplitude: f64) -> Result<Self> {
        Self::new(amplitude, vec![amplitude], vec![1.0])
    }

    /// A point mass at the origin, with `amplitude` fixing the admissible
    /// interval.
    pub fn point_mass_at_zero(amplitude: f64) -> Result<Self> {
        Self::new(amplitude, vec![0.0], vec![1.0])
    }

    /// Equiprobable input on the given half-points: every point of the full
    /// symmetric support gets the same probability.
    pub fn uniform(amplitude: f64, points: Vec<f64>) -> Result<Self> {
        let weights = uniform_half_weights(&points);
        Self::new(amplitude, points, weights)
    }

    /// Rebuilds the half representation from a full symmetric support given
    /// as `(x, probability)` pairs. Mirror images must agree within `tol`
    /// in both location and probability.
    pub fn from_full_support(pairs: &[(f64, f64)], tol: f64) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("empty distribution".into()));
        }
        let mut sorted = pairs.to_vec();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = sorted.iter().map(|p| p.1).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidInput(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let n = sorted.len();
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for i in 0..n.div_ceil(2) {
            let (neg_x, neg_p) = sorted[i];
            let (pos_x, pos_p) = sorted[n - 1 - i];
            if i == n - 1 - i {
                if pos_x.abs() > tol {
                    return Err(Error::InvalidInput(format!(
                        "distribution is not symmetric: unpaired point at {pos_x}"
                    )));
                }
                points.push(0.0);
                weights.push(pos_p);
                continue;
            }
            if (neg_x + pos_x).abs() > tol || (neg_p - pos_p).abs() > tol {
                return Err(Error::InvalidInput(format!(
                    "distribution is not symmetric: ({neg_x}, {neg_p}) does not mirror ({pos_x}, {pos_p})"
                )));
            }
            points.push(0.5 * (pos_x - neg_x));
            weights.push(neg_p + pos_p);
        }
        points.reverse();
        weights.reverse();
        let amplitude = *points.last().unwrap();
        if !(amplitude > 0.0) {
            return Err(Error::InvalidInput(
                "distribution is a point mass at the origin; amplitude undefined".into(),
            ));
        }
        Self::new(amplitude, points, weights)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of half-points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when the largest half-point sits exactly at the amplitude.
    pub fn is_pinned(&self) -> bool {
        self.points.last() == Some(&self.amplitude)
    }

    pub fn has_zero(&self) -> bool {
        self.points.first() == Some(&0.0)
    }

    /// `|supp P_X|`: each positive half-point stands for two mass points.
    pub fn full_support_size(&self) -> usize {
        self.points
            .iter()
            .map(|&x| if x == 0.0 { 1 } else { 2 })
            .sum()
    }

    /// The full symmetric support as ascending `(x, probability)` pairs.
    pub fn full_support(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.full_support_size());
        for (&x, &w) in self.points.iter().zip(&self.weights).rev() {
            if x != 0.0 {
                out.push((-x, 0.5 * w));
            }
        }
        for (&x, &w) in self.points.iter().zip(&self.weights) {
            out.push((x, if x == 0.0 { w } else { 0.5 * w }));
        }
        out
    }

    /// Same half-points and weights with the pin moved to `amplitude`.
    /// Used to warm-start a solve at a larger amplitude.
    pub fn rescaled_pin(&self, amplitude: f64) -> Result<Self> {
        let mut points = self.points.clone();
        let mut weights = self.weights.clone();
        if let Some(last) = points.last_mut() {
            *last = amplitude;
        }
        // Interior points beyond the new amplitude fold into the pin.
        while points.len() > 1 && points[points.len() - 2] >= amplitude {
            let w = weights.remove(points.len() - 2);
            points.remove(points.len() - 2);
            *weights.last_mut().unwrap() += w;
        }
        Self::new(amplitude, points, weights)
    }
}

/// Half-weights that put probability `1/|supp|` on every full-support point.
pub fn uniform_half_weights(points: &[f64]) -> Vec<f64> {
    let size: usize = points.iter().map(|&x| if x == 0.0 { 1 } else { 2 }).sum();
    let unit = 1.0 / size as f64;
    points
        .iter()
        .map(|&x| if x == 0.0 { unit } else { 2.0 * unit })
        .collect()
}

/// Output density `P_Y` of one channel leg: a Gaussian mixture with one
/// component per full-support point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputMixture {
    sigma: f64,
    means: Vec<f64>,
    weights: Vec<f64>,
    #[serde(skip)]
    log_weights: Vec<f64>,
}

impl OutputMixture {
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `ln P_Y(y)`.
    pub fn log_pdf(&self, y: f64) -> f64 {
        let exps: Vec<f64> = self
            .means
            .iter()
            .zip(&self.log_weights)
            .map(|(&m, &lw)| lw + log_gaussian_unchecked(y, m, self.sigma))
            .collect();
        log_sum_exp_slice(&exps)
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }
}

/// The mixture induced by `input` through additive `N(0, sigma²)` noise.
pub fn output_mixture(input: &SymmetricInput, sigma: f64) -> Result<OutputMixture> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let (means, weights): (Vec<f64>, Vec<f64>) = input.full_support().into_iter().unzip();
    let log_weights = weights.iter().map(|w| w.ln()).collect();
    Ok(OutputMixture {
        sigma,
        means,
        weights,
        log_weights,
    })
}

/// `ln P_Y(y)` for the mixture.
pub fn log_output_pdf(mix: &OutputMixture, y: f64) -> f64 {
    mix.log_pdf(y)
}

/// Mixture components in log form, from raw half-representation slices.
fn expand_components(points: &[f64], weights: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut means = Vec::with_capacity(2 * points.len());
    let mut log_w = Vec::with_capacity(2 * points.len());
    for (&x, &w) in points.iter().zip(weights) {
        if x == 0.0 {
            means.push(0.0);
            log_w.push(w.ln());
        } else {
            let lw = (0.5 * w).ln();
            means.push(-x);
            log_w.push(lw);
            means.push(x);
            log_w.push(lw);
        }
    }
    (means, log_w)
}

/// Kernel contributions beyond this many standard deviations are below
/// `e^{-40}` relative and are skipped.
const KERNEL_REACH: f64 = 9.0;

/// One channel leg with `ln P_Y` cached on the quadrature nodes.
#[derive(Debug, Clone)]
pub(crate) struct Leg {
    sigma: f64,
    means: Vec<f64>,
    log_w: Vec<f64>,
    rule: QuadratureRule,
    log_py: Vec<f64>,
    spec: QuadratureSpec,
}

impl Leg {
    fn new(
        points: &[f64],
        weights: &[f64],
        amplitude: f64,
        sigma: f64,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        let (means, log_w) = expand_components(points, weights);
        let reach = means.iter().fold(amplitude, |m, x| m.max(x.abs()));
        let rule = spec.channel_rule(reach, sigma)?;
        let mut leg = Leg {
            sigma,
            means,
            log_w,
            log_py: Vec::new(),
            rule,
            spec: *spec,
        };
        leg.log_py = leg.log_pdf_on(leg.rule.nodes());
        if let Some(k) = leg.log_py.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteIntegrand {
                node: leg.rule.nodes()[k],
                value: leg.log_py[k],
            });
        }
        Ok(leg)
    }

    fn log_pdf_on(&self, ys: &[f64]) -> Vec<f64> {
        let mut exps = vec![0.0; self.means.len()];
        ys.iter()
            .map(|&y| {
                for ((e, &m), &lw) in exps.iter_mut().zip(&self.means).zip(&self.log_w) {
                    *e = lw + log_gaussian_unchecked(y, m, self.sigma);
                }
                log_sum_exp_slice(&exps)
            })
            .collect()
    }

    /// `∫ P_Y ln P_Y`.
    fn neg_entropy(&self) -> f64 {
        self.rule
            .weights()
            .iter()
            .zip(&self.log_py)
            .map(|(&w, &lp)| w * lp.exp() * lp)
            .sum()
    }

    /// `I(X; Y)` without clamping.
    fn mutual_information_raw(&self) -> f64 {
        -self.neg_entropy() - self.gaussian_entropy()
    }

    /// `½ ln(2πeσ²)`.
    fn gaussian_entropy(&self) -> f64 {
        HALF_LN_2PI + self.sigma.ln() + 0.5
    }

    /// Returns `(∫ φ(y−x) ln P_Y(y) dy, ∫ φ(y−x) (y−x)/σ² ln P_Y(y) dy)`.
    fn kernel_moments(&self, x: f64) -> (f64, f64) {
        let (lo, hi) = self.rule.domain();
        let reach = KERNEL_REACH * self.sigma;
        if x - reach < lo || x + reach > hi {
            return self.kernel_moments_wide(x);
        }
        let nodes = self.rule.nodes();
        let start = nodes.partition_point(|&y| y < x - reach);
        let end = nodes.partition_point(|&y| y <= x + reach);
        let inv_var = 1.0 / (self.sigma * self.sigma);
        let mut m0 = 0.0;
        let mut m1 = 0.0;
        let window = nodes[start..end]
            .iter()
            .zip(&self.rule.weights()[start..end])
            .zip(&self.log_py[start..end]);
        for ((&y, &w), &lp) in window {
            let d = y - x;
            let phi = log_gaussian_unchecked(d, 0.0, self.sigma).exp();
            let t = w * phi * lp;
            m0 += t;
            m1 += t * d * inv_var;
        }
        (m0, m1)
    }

    /// Fallback for points far outside the cached window.
    fn kernel_moments_wide(&self, x: f64) -> (f64, f64) {
        let half = x.abs() + crate::numerics::TAIL_SIGMAS * self.sigma;
        let rule = self
            .spec
            .channel_rule(half, self.sigma)
            .expect("window is nonempty");
        let log_py = self.log_pdf_on(rule.nodes());
        let inv_var = 1.0 / (self.sigma * self.sigma);
        let mut m0 = 0.0;
        let mut m1 = 0.0;
        for ((&y, &w), &lp) in rule.nodes().iter().zip(rule.weights()).zip(&log_py) {
            let d = y - x;
            let t = w * log_gaussian_unchecked(d, 0.0, self.sigma).exp() * lp;
            m0 += t;
            m1 += t * d * inv_var;
        }
        (m0, m1)
    }

    /// `D(N(x, σ²) ‖ P_Y)`.
    fn divergence(&self, x: f64) -> f64 {
        -self.gaussian_entropy() - self.kernel_moments(x).0
    }
}

/// Both legs of the wiretap channel evaluated against one input. All
/// information quantities of a candidate distribution come from here so the
/// output densities are tabulated once per candidate.
#[derive(Debug, Clone)]
pub struct SecrecyEvaluator {
    legit: Leg,
    eve: Leg,
}

impl SecrecyEvaluator {
    pub fn new(input: &SymmetricInput, ch: &ChannelPair, spec: &QuadratureSpec) -> Result<Self> {
        Self::from_raw(input.points(), input.weights(), input.amplitude(), ch, spec)
    }

    /// Evaluator for an unvalidated half representation. Finite-difference
    /// probes use this to step points past the amplitude.
    pub fn from_raw(
        points: &[f64],
        weights: &[f64],
        amplitude: f64,
        ch: &ChannelPair,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        Ok(SecrecyEvaluator {
            legit: Leg::new(points, weights, amplitude, ch.sigma1, spec)?,
            eve: Leg::new(points, weights, amplitude, ch.sigma2, spec)?,
        })
    }

    /// `Ξ(x) = D(P_{Y₁|X=x} ‖ P_{Y₁}) − D(P_{Y₂|X=x} ‖ P_{Y₂})`.
    pub fn xi(&self, x: f64) -> f64 {
        if self.legit.sigma == self.eve.sigma {
            return 0.0;
        }
        self.legit.divergence(x) - self.eve.divergence(x)
    }

    /// `dΞ/dx` with the output densities held fixed.
    pub fn xi_slope(&self, x: f64) -> f64 {
        if self.legit.sigma == self.eve.sigma {
            return 0.0;
        }
        self.eve.kernel_moments(x).1 - self.legit.kernel_moments(x).1
    }

    /// `I(X; Y₁)`, unclamped.
    pub fn mi_legit(&self) -> f64 {
        self.legit.mutual_information_raw()
    }

    /// `I(X; Y₂)`, unclamped.
    pub fn mi_eve(&self) -> f64 {
        self.eve.mutual_information_raw()
    }

    /// `I(X; Y₁) − I(X; Y₂)`, unclamped.
    pub fn secrecy_information(&self) -> f64 {
        if self.legit.sigma == self.eve.sigma {
            return 0.0;
        }
        self.mi_legit() - self.mi_eve()
    }
}

fn clamp_mi(raw: f64) -> Result<f64> {
    if !raw.is_finite() {
        return Err(Error::Numerical(format!(
            "mutual information evaluated to {raw}"
        )));
    }
    if raw < -MI_CLAMP_TOL {
        return Err(Error::Numerical(format!(
            "mutual information {raw:e} is negative beyond quadrature noise"
        )));
    }
    Ok(raw.max(0.0))
}

/// `I(X; Y)` in nats for `Y = X + N(0, sigma²)`.
pub fn mutual_information(input: &SymmetricInput, sigma: f64) -> Result<f64> {
    mutual_information_with(input, sigma, &QuadratureSpec::default())
}

pub fn mutual_information_with(
    input: &SymmetricInput,
    sigma: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let leg = Leg::new(
        input.points(),
        input.weights(),
        input.amplitude(),
        sigma,
        spec,
    )?;
    clamp_mi(leg.mutual_information_raw())
}

/// `I(X; Y₁) − I(X; Y₂)` in nats. Negative values are possible when the
/// channel is not degraded.
pub fn secrecy_information(input: &SymmetricInput, ch: &ChannelPair) -> Result<f64> {
    let spec = QuadratureSpec::default();
    Ok(mutual_information_with(input, ch.sigma1, &spec)?
        - mutual_information_with(input, ch.sigma2, &spec)?)
}

/// `Ξ(x; P_X)` in nats.
pub fn xi(x: f64, input: &SymmetricInput, ch: &ChannelPair) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("Ξ needs a finite abscissa, got {x}")));
    }
    let v = SecrecyEvaluator::new(input, ch, &QuadratureSpec::default())?.xi(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical(format!("Ξ({x}) evaluated to {v}")))
    }
}

/// `½ ln(1 + variance/σ²)`: mutual information of a Gaussian input with the
/// given variance.
pub fn gaussian_input_mi(input_variance: f64, sigma: f64) -> f64 {
    debug_assert!(input_variance >= 0.0 && sigma > 0.0);
    0.5 * (input_variance / (sigma * sigma)).ln_1p()
}

/// `E[X²]` (the mean is zero by symmetry).
pub fn input_variance(input: &SymmetricInput) -> f64 {
    input
        .points()
        .iter()
        .zip(input.weights())
        .map(|(x, w)| w * x * x)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;

    fn ch(s1: f64, s2: f64) -> ChannelPair {
        ChannelPair::new(s1, s2).unwrap()
    }

    /// Plain-density trapezoid estimate of I(X;Y) over [-10, 10] with 10⁶
    /// intervals. Shares nothing with the log-domain quadrature path.
    fn trapezoid_mi(support: &[(f64, f64)], sigma: f64) -> f64 {
        let n = 2_000_000usize;
        let reach = support.iter().map(|p| p.0.abs()).fold(0.0, f64::max) + 12.0 * sigma;
        let (lo, hi) = (-reach, reach);
        let h = (hi - lo) / n as f64;
        let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
        let mut acc = 0.0;
        for k in 0..=n {
            let y = lo + k as f64 * h;
            let p: f64 = support
                .iter()
                .map(|&(m, w)| w * norm * (-(y - m) * (y - m) / (2.0 * sigma * sigma)).exp())
                .sum();
            let v = if p > 0.0 { -p * p.ln() } else { 0.0 };
            acc += if k == 0 || k == n { 0.5 * v } else { v };
        }
        acc * h - 0.5 * (2.0 * PI * std::f64::consts::E * sigma * sigma).ln()
    }

    #[test]
    fn channel_pair_rejects_nonpositive() {
        assert!(ChannelPair::new(0.0, 1.0).is_err());
        assert!(ChannelPair::new(1.0, -2.0).is_err());
        assert!(ChannelPair::new(1.0, f64::NAN).is_err());
        let c = ChannelPair::from_variances(1.0, 10.0).unwrap();
        assert_abs_diff_eq!(c.sigma2(), 10f64.sqrt(), epsilon = 1e-15);
        assert!(c.is_degraded());
        assert!(!ch(1.0, 1.0).is_degraded());
    }

    #[test]
    fn input_validation() {
        assert!(SymmetricInput::new(1.0, vec![0.5, 0.5], vec![0.5, 0.5]).is_err());
        assert!(SymmetricInput::new(1.0, vec![0.5, 1.5], vec![0.5, 0.5]).is_err());
        assert!(SymmetricInput::new(1.0, vec![0.5, 1.0], vec![0.5, 0.4]).is_err());
        assert!(SymmetricInput::new(1.0, vec![0.5, 1.0], vec![1.0, 0.0]).is_err());
        assert!(SymmetricInput::new(0.0, vec![0.0], vec![1.0]).is_err());
        let inp = SymmetricInput::new(2.0, vec![0.0, 2.0], vec![0.4, 0.6]).unwrap();
        assert!(inp.is_pinned());
        assert!(inp.has_zero());
        assert_eq!(inp.full_support_size(), 3);
        assert!(!SymmetricInput::point_mass_at_zero(2.0).unwrap().is_pinned());
    }

    #[test]
    fn full_support_round_trip() {
        let inp = SymmetricInput::new(3.0, vec![0.0, 1.2, 3.0], vec![0.2, 0.3, 0.5]).unwrap();
        let full = inp.full_support();
        assert_eq!(
            full,
            vec![
                (-3.0, 0.25),
                (-1.2, 0.15),
                (0.0, 0.2),
                (1.2, 0.15),
                (3.0, 0.25)
            ]
        );
        let back = SymmetricInput::from_full_support(&full, 1e-9).unwrap();
        assert_eq!(back, inp);
        let lopsided = [(-1.0, 0.4), (1.0, 0.6)];
        assert!(SymmetricInput::from_full_support(&lopsided, 1e-9).is_err());
        let short = [(-1.0, 0.45), (1.0, 0.45)];
        assert!(SymmetricInput::from_full_support(&short, 1e-9).is_err());
    }

    #[test]
    fn output_mixture_expansion() {
        let m = output_mixture(&SymmetricInput::antipodal(1.0).unwrap(), 1.0).unwrap();
        assert_eq!(m.means(), &[-1.0, 1.0]);
        assert_eq!(m.weights(), &[0.5, 0.5]);

        let m = output_mixture(&SymmetricInput::point_mass_at_zero(1.0).unwrap(), 2.0).unwrap();
        assert_eq!(m.means(), &[0.0]);
        assert_eq!(m.weights(), &[1.0]);

        let inp = SymmetricInput::new(2.0, vec![0.0, 2.0], vec![0.4, 0.6]).unwrap();
        let m = output_mixture(&inp, 1.0).unwrap();
        assert_eq!(m.means(), &[-2.0, 0.0, 2.0]);
        for (got, want) in m.weights().iter().zip([0.3, 0.4, 0.3]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert!(output_mixture(&inp, 0.0).is_err());
    }

    #[test]
    fn log_output_pdf_values() {
        let m = output_mixture(&SymmetricInput::point_mass_at_zero(1.0).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(log_output_pdf(&m, 0.0), -LN_2PI_HALF, epsilon = 1e-12);

        let m = output_mixture(&SymmetricInput::antipodal(2.0).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(log_output_pdf(&m, 0.0), -LN_2PI_HALF - 2.0, epsilon = 1e-12);
        for y in [0.3, 1.7, 4.2] {
            assert_abs_diff_eq!(
                log_output_pdf(&m, y),
                log_output_pdf(&m, -y),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn mutual_information_edge_cases() {
        let mass = SymmetricInput::point_mass_at_zero(1.0).unwrap();
        assert_abs_diff_eq!(mutual_information(&mass, 1.0).unwrap(), 0.0, epsilon = 1e-9);
        let tiny = SymmetricInput::antipodal(1e-3).unwrap();
        assert!(mutual_information(&tiny, 1.0).unwrap() < 1e-6);
    }

    #[test]
    fn mutual_information_matches_trapezoid() {
        let inp = SymmetricInput::antipodal(2.0).unwrap();
        let mi = mutual_information(&inp, 1.0).unwrap();
        let oracle = trapezoid_mi(&inp.full_support(), 1.0);
        assert!(mi > 0.0 && mi <= 2f64.ln());
        assert_abs_diff_eq!(mi, oracle, epsilon = 1e-6);

        let c = ch(1.0, 10f64.sqrt());
        let s = secrecy_information(&inp, &c).unwrap();
        let oracle_eve = trapezoid_mi(&inp.full_support(), 10f64.sqrt());
        assert!(s > 0.0);
        assert_abs_diff_eq!(s, oracle - oracle_eve, epsilon = 2e-6);
    }

    #[test]
    fn secrecy_information_trivial_cases() {
        let inp = SymmetricInput::new(2.0, vec![0.5, 2.0], vec![0.3, 0.7]).unwrap();
        assert_abs_diff_eq!(
            secrecy_information(&inp, &ch(1.3, 1.3)).unwrap(),
            0.0,
            epsilon = 1e-9
        );
        let mass = SymmetricInput::point_mass_at_zero(2.0).unwrap();
        assert_abs_diff_eq!(
            secrecy_information(&mass, &ch(1.0, 3.0)).unwrap(),
            0.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn xi_equal_noise_is_zero() {
        let inp = SymmetricInput::new(2.0, vec![0.5, 2.0], vec![0.3, 0.7]).unwrap();
        for x in [0.0, 0.7, 2.0, 3.5] {
            assert_abs_diff_eq!(xi(x, &inp, &ch(1.0, 1.0)).unwrap(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn xi_of_point_mass_matches_gaussian_kl() {
        // D(N(x,σ²) ‖ N(0,σ²)) = x²/(2σ²)
        let (s1, s2) = (1.0, 10f64.sqrt());
        let mass = SymmetricInput::point_mass_at_zero(2.0).unwrap();
        for x in [0.0, 1.0, 2.0] {
            let closed = 0.5 * x * x * (1.0 / (s1 * s1) - 1.0 / (s2 * s2));
            assert_abs_diff_eq!(xi(x, &mass, &ch(s1, s2)).unwrap(), closed, epsilon = 1e-8);
        }
    }

    #[test]
    fn xi_far_outside_window_uses_wide_rule() {
        let (s1, s2) = (1.0, 2.0);
        let mass = SymmetricInput::point_mass_at_zero(1.0).unwrap();
        let x = 12.0;
        let closed = 0.5 * x * x * (1.0 / (s1 * s1) - 1.0 / (s2 * s2));
        assert_abs_diff_eq!(xi(x, &mass, &ch(s1, s2)).unwrap(), closed, epsilon = 1e-8);
    }

    #[test]
    fn xi_slope_matches_difference_quotient() {
        let inp = SymmetricInput::new(3.0, vec![0.0, 1.4, 3.0], vec![0.3, 0.3, 0.4]).unwrap();
        let ev = SecrecyEvaluator::new(&inp, &ch(1.0, 2.0), &QuadratureSpec::default()).unwrap();
        let h = 1e-5;
        for x in [0.3, 1.1, 2.5] {
            let fd = (ev.xi(x + h) - ev.xi(x - h)) / (2.0 * h);
            assert_abs_diff_eq!(ev.xi_slope(x), fd, epsilon = 1e-7);
        }
    }

    #[test]
    fn gaussian_input_mi_values() {
        assert_eq!(gaussian_input_mi(0.0, 2.0), 0.0);
        assert_abs_diff_eq!(
            gaussian_input_mi(4.0, 2.0),
            0.5 * 2f64.ln(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(gaussian_input_mi(3.0, 1.0), 2f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn input_variance_values() {
        assert_eq!(
            input_variance(&SymmetricInput::point_mass_at_zero(1.0).unwrap()),
            0.0
        );
        assert_abs_diff_eq!(
            input_variance(&SymmetricInput::antipodal(1.7).unwrap()),
            1.7 * 1.7,
            epsilon = 1e-15
        );
        let inp = SymmetricInput::new(2.0, vec![0.0, 2.0], vec![0.4, 0.6]).unwrap();
        assert_abs_diff_eq!(input_variance(&inp), 2.4, epsilon = 1e-15);
    }

    #[test]
    fn rescaled_pin_moves_the_peak() {
        let inp = SymmetricInput::new(2.0, vec![0.0, 1.0, 2.0], vec![0.2, 0.3, 0.5]).unwrap();
        let next = inp.rescaled_pin(2.05).unwrap();
        assert_eq!(next.points(), &[0.0, 1.0, 2.05]);
        assert_eq!(next.weights(), inp.weights());
    }

    fn arb_input() -> impl Strategy<Value = SymmetricInput> {
        (
            0.2f64..6.0,
            any::<bool>(),
            prop::collection::vec(0.0f64..1.0, 0..5),
            prop::collection::vec(0.05f64..1.0, 7),
        )
            .prop_map(|(amp, zero, mut fracs, raw_w)| {
                fracs.sort_by(f64::total_cmp);
                let mut pts: Vec<f64> = Vec::new();
                if zero {
                    pts.push(0.0);
                }
                for f in fracs {
                    let x = (0.02 + 0.96 * f) * amp;
                    if pts.last().is_none_or(|&p| x - p > 1e-3) {
                        pts.push(x);
                    }
                }
                pts.push(amp);
                let w = &raw_w[..pts.len()];
                let total: f64 = w.iter().sum();
                let w = w.iter().map(|v| v / total).collect();
                SymmetricInput::new(amp, pts, w).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mi_is_bounded_by_log_support(inp in arb_input(), sigma in 0.3f64..4.0) {
            let mi = mutual_information(&inp, sigma).unwrap();
            prop_assert!(mi >= 0.0);
            prop_assert!(mi <= (inp.full_support_size() as f64).ln() + 1e-9);
        }

        #[test]
        fn degraded_leg_carries_less_information(inp in arb_input(), s1 in 0.3f64..2.0, ratio in 1.05f64..5.0) {
            let i1 = mutual_information(&inp, s1).unwrap();
            let i2 = mutual_information(&inp, s1 * ratio).unwrap();
            prop_assert!(i1 >= i2 - 1e-9);
        }

        #[test]
        fn xi_expectation_equals_secrecy_information(inp in arb_input(), s1 in 0.3f64..2.0, ratio in 1.05f64..5.0) {
            let c = ch(s1, s1 * ratio);
            let ev = SecrecyEvaluator::new(&inp, &c, &QuadratureSpec::default()).unwrap();
            let expectation: f64 = inp.points().iter().zip(inp.weights()).map(|(&x, &w)| w * ev.xi(x)).sum();
            prop_assert!((expectation - ev.secrecy_information()).abs() < 1e-7);
            let public = secrecy_information(&inp, &c).unwrap();
            prop_assert!((expectation - public).abs() < 1e-7);
        }

        #[test]
        fn xi_and_output_density_are_even(inp in arb_input(), x in 0.0f64..6.0, ratio in 1.05f64..5.0) {
            let c = ch(1.0, ratio);
            let ev = SecrecyEvaluator::new(&inp, &c, &QuadratureSpec::default()).unwrap();
            prop_assert!((ev.xi(x) - ev.xi(-x)).abs() < 1e-9);
            let mix = output_mixture(&inp, 1.0).unwrap();
            prop_assert!((log_output_pdf(&mix, x) - log_output_pdf(&mix, -x)).abs() < 1e-9);
        }
    }
}
