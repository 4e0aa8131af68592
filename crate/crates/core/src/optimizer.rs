//! The two inner loops of the solver: a Blahut–Arimoto-style multiplicative
//! update of the probabilities on a fixed support, and projected gradient
//! ascent with backtracking on the support locations.
//!
//! The probability update is `w_i ← w_i · exp(Ξ(x_i)) / Z`. Its fixed points
//! are exactly the inputs whose support points share a common value of Ξ,
//! and for an infinitely noisy eavesdropper it reduces to the classical
//! Blahut–Arimoto iteration.
//!
//! Location updates ascend `I(X; Y₁) − I(X; Y₂)`. For a half-point `x_i` with
//! weight `w_i` the partial derivative is `w_i · Ξ'(x_i)`, where `Ξ'` is taken
//! with the output densities held fixed; the mirrored point `−x_i`
//! contributes the same amount because `Ξ'` is odd.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelPair, SecrecyEvaluator, SymmetricInput};
use crate::numerics::QuadratureSpec;

/// Weights are floored here after every probability update.
pub const WEIGHT_FLOOR: f64 = 1e-12;

/// Maximum number of step contractions per ascent iteration.
pub const MAX_SHRINKS: usize = 30;

/// Central-difference step of the gradient self-check.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AscentParams {
    /// Probability updates per inner iteration.
    pub n_ba: usize,
    /// Location ascent steps per inner iteration.
    pub n_ga: usize,
    /// Sufficient-increase fraction, in `(0, ½)`.
    pub backtrack_alpha: f64,
    /// Step contraction factor, in `(0, 1)`.
    pub backtrack_beta: f64,
    /// First trial step; `None` means `0.1·σ₁`.
    pub initial_step: Option<f64>,
    /// Absolute tolerance of the finite-difference gradient self-check.
    pub fd_check_tol: f64,
    /// Move each point along `Ξ'(x_i)` instead of `w_i · Ξ'(x_i)`, so that
    /// light points travel as fast as heavy ones.
    pub precondition: bool,
    /// Each line search after the first starts from this multiple of the
    /// last accepted step (never below the initial step). `1.0` restarts
    /// from the initial step every time.
    pub step_growth: f64,
}

impl Default for AscentParams {
    fn default() -> Self {
        AscentParams {
            n_ba: 100,
            n_ga: 20,
            backtrack_alpha: 0.3,
            backtrack_beta: 0.5,
            initial_step: None,
            fd_check_tol: 1e-6,
            precondition: true,
            step_growth: 2.0,
        }
    }
}

impl AscentParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.backtrack_alpha > 0.0 && self.backtrack_alpha < 0.5) {
            return Err(Error::domain(format!(
                "backtrack_alpha must lie in (0, 0.5), got {}",
                self.backtrack_alpha
            )));
        }
        if !(self.backtrack_beta > 0.0 && self.backtrack_beta < 1.0) {
            return Err(Error::domain(format!(
                "backtrack_beta must lie in (0, 1), got {}",
                self.backtrack_beta
            )));
        }
        if let Some(t) = self.initial_step {
            if !(t > 0.0) {
                return Err(Error::domain("initial_step must be positive"));
            }
        }
        if !(self.fd_check_tol > 0.0) {
            return Err(Error::domain("fd_check_tol must be positive"));
        }
        if !(self.step_growth >= 1.0) || !self.step_growth.is_finite() {
            return Err(Error::domain("step_growth must be a finite number >= 1"));
        }
        Ok(())
    }

    pub fn step_for(&self, ch: &ChannelPair) -> f64 {
        self.initial_step.unwrap_or(0.1 * ch.sigma1())
    }
}

/// Ξ at every half-point of `input`.
pub fn support_xi(ev: &SecrecyEvaluator, input: &SymmetricInput) -> Vec<f64> {
    input.points().iter().map(|&x| ev.xi(x)).collect()
}

fn multiplicative_update(input: &SymmetricInput, xis: &[f64]) -> Result<SymmetricInput> {
    let max = xis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = input
        .weights()
        .iter()
        .zip(xis)
        .map(|(&w, &v)| w * (v - max).exp())
        .collect();
    let z: f64 = scaled.iter().sum();
    if !z.is_finite() || !(z > 0.0) || !max.is_finite() {
        return Err(Error::Numerical(format!(
            "probability update normalizer is {z} (max Ξ {max})"
        )));
    }
    let weights = scaled.into_iter().map(|w| w / z).collect();
    Ok(SymmetricInput::from_parts(
        input.amplitude(),
        input.points().to_vec(),
        weights,
    ))
}

/// One multiplicative probability update on the current support.
pub fn ba_step(input: &SymmetricInput, ch: &ChannelPair) -> Result<SymmetricInput> {
    ba_step_with(input, ch, &QuadratureSpec::default())
}

pub fn ba_step_with(
    input: &SymmetricInput,
    ch: &ChannelPair,
    quad: &QuadratureSpec,
) -> Result<SymmetricInput> {
    let ev = SecrecyEvaluator::new(input, ch, quad)?;
    multiplicative_update(input, &support_xi(&ev, input))
}

fn floor_weights(input: SymmetricInput) -> SymmetricInput {
    if input.weights().iter().all(|&w| w >= WEIGHT_FLOOR) {
        return input;
    }
    let floored: Vec<f64> = input
        .weights()
        .iter()
        .map(|&w| w.max(WEIGHT_FLOOR))
        .collect();
    let total: f64 = floored.iter().sum();
    let weights = floored.into_iter().map(|w| w / total).collect();
    SymmetricInput::from_parts(input.amplitude(), input.points().to_vec(), weights)
}

/// `n_ba` probability updates, flooring weights at [`WEIGHT_FLOOR`].
pub fn run_ba(input: &SymmetricInput, ch: &ChannelPair, n_ba: usize) -> Result<SymmetricInput> {
    run_ba_with(input, ch, n_ba, &QuadratureSpec::default(), None)
}

/// As [`run_ba`]. With `stop_spread`, iteration ends early once the spread
/// `max Ξ(x_i) − min Ξ(x_i)` over the support drops below it.
pub fn run_ba_with(
    input: &SymmetricInput,
    ch: &ChannelPair,
    n_ba: usize,
    quad: &QuadratureSpec,
    stop_spread: Option<f64>,
) -> Result<SymmetricInput> {
    let mut cur = input.clone();
    for _ in 0..n_ba {
        let ev = SecrecyEvaluator::new(&cur, ch, quad)?;
        let xis = support_xi(&ev, &cur);
        if let Some(tol) = stop_spread {
            if spread(&xis) < tol {
                break;
            }
        }
        cur = floor_weights(multiplicative_update(&cur, &xis)?);
    }
    Ok(cur)
}

pub(crate) fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

/// `∂(I₁ − I₂)/∂x_i` for every half-point, including the pinned one.
pub fn secrecy_gradient(input: &SymmetricInput, ch: &ChannelPair) -> Result<Vec<f64>> {
    secrecy_gradient_with(input, ch, &QuadratureSpec::default())
}

pub fn secrecy_gradient_with(
    input: &SymmetricInput,
    ch: &ChannelPair,
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let ev = SecrecyEvaluator::new(input, ch, quad)?;
    Ok(gradient_from(&ev, input))
}

fn gradient_from(ev: &SecrecyEvaluator, input: &SymmetricInput) -> Vec<f64> {
    input
        .points()
        .iter()
        .zip(input.weights())
        .map(|(&x, &w)| if x == 0.0 { 0.0 } else { w * ev.xi_slope(x) })
        .collect()
}

/// Central finite differences of the secrecy information in each half-point.
pub fn finite_difference_gradient(
    input: &SymmetricInput,
    ch: &ChannelPair,
    quad: &QuadratureSpec,
    step: f64,
) -> Result<Vec<f64>> {
    let mut pts = input.points().to_vec();
    let w = input.weights();
    let amp = input.amplitude();
    let mut out = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        let x = pts[i];
        pts[i] = x + step;
        let up = SecrecyEvaluator::from_raw(&pts, w, amp, ch, quad)?.secrecy_information();
        pts[i] = x - step;
        let down = SecrecyEvaluator::from_raw(&pts, w, amp, ch, quad)?.secrecy_information();
        pts[i] = x;
        out.push((up - down) / (2.0 * step));
    }
    Ok(out)
}

/// Compares the analytic gradient with central differences. Half-points
/// within two steps of the origin are skipped: the symmetric
/// parametrization has a kink there.
pub fn check_gradient(
    input: &SymmetricInput,
    ch: &ChannelPair,
    quad: &QuadratureSpec,
    tol: f64,
) -> Result<()> {
    let analytic = secrecy_gradient_with(input, ch, quad)?;
    let numeric = finite_difference_gradient(input, ch, quad, FD_STEP)?;
    for (i, (&a, &n)) in analytic.iter().zip(&numeric).enumerate() {
        let x = input.points()[i];
        if x > 0.0 && x < 2.0 * FD_STEP {
            continue;
        }
        if (a - n).abs() > tol {
            return Err(Error::GradientMismatch {
                index: i,
                analytic: a,
                numeric: n,
            });
        }
    }
    Ok(())
}

/// Up to `n_ga` backtracking gradient-ascent steps on the free half-points.
/// The point at the amplitude stays pinned; moved points are clamped to
/// `[0, A]` and re-sorted. Coincident points are left for clustering.
pub fn ascend(
    input: &SymmetricInput,
    ch: &ChannelPair,
    params: &AscentParams,
) -> Result<SymmetricInput> {
    ascend_with(input, ch, params, &QuadratureSpec::default())
}

pub fn ascend_with(
    input: &SymmetricInput,
    ch: &ChannelPair,
    params: &AscentParams,
    quad: &QuadratureSpec,
) -> Result<SymmetricInput> {
    let amp = input.amplitude();
    let pinned = input.is_pinned();
    let free = if pinned { input.len() - 1 } else { input.len() };
    let mut cur = input.clone();
    let mut ev = SecrecyEvaluator::new(&cur, ch, quad)?;
    let mut value = ev.secrecy_information();

    let base_step = params.step_for(ch);
    let mut next_step = base_step;
    for _ in 0..params.n_ga {
        let mut grad = gradient_from(&ev, &cur);
        grad[free..].iter_mut().for_each(|g| *g = 0.0);
        if grad.iter().all(|&g| g == 0.0) {
            break;
        }
        let dir: Vec<f64> = if params.precondition {
            grad.iter()
                .zip(cur.weights())
                .map(|(&g, &w)| g / w)
                .collect()
        } else {
            grad.clone()
        };
        let reach = dir.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let mut step = next_step.min(amp / reach);
        let mut accepted = None;
        for _ in 0..=MAX_SHRINKS {
            let trial: Vec<f64> = cur
                .points()
                .iter()
                .zip(&dir)
                .map(|(&x, &d)| (x + step * d).clamp(0.0, amp))
                .collect();
            let gain_bound: f64 = trial
                .iter()
                .zip(cur.points())
                .zip(&grad)
                .map(|((&t, &x), &g)| g * (t - x))
                .sum();
            let trial_ev = SecrecyEvaluator::from_raw(&trial, cur.weights(), amp, ch, quad)?;
            let trial_value = trial_ev.secrecy_information();
            if !trial_value.is_finite() {
                return Err(Error::Numerical(format!(
                    "secrecy information evaluated to {trial_value} during line search"
                )));
            }
            if trial_value > value && trial_value >= value + params.backtrack_alpha * gain_bound {
                accepted = Some((trial, trial_ev, trial_value));
                break;
            }
            step *= params.backtrack_beta;
        }
        next_step = (step * params.step_growth).max(base_step);
        let Some((trial, trial_ev, trial_value)) = accepted else {
            break;
        };
        let mut order: Vec<usize> = (0..trial.len()).collect();
        // Stable sort keeps the pin last among ties at A.
        order.sort_by(|&a, &b| trial[a].total_cmp(&trial[b]));
        let sorted_already = order.iter().enumerate().all(|(i, &j)| i == j);
        let points: Vec<f64> = order.iter().map(|&j| trial[j]).collect();
        let weights: Vec<f64> = order.iter().map(|&j| cur.weights()[j]).collect();
        cur = SymmetricInput::from_parts(amp, points, weights);
        value = trial_value;
        ev = if sorted_already {
            trial_ev
        } else {
            SecrecyEvaluator::new(&cur, ch, quad)?
        };
    }
    Ok(cur)
}
