//! ε-relaxed KKT validation of a candidate input.
//!
//! A symmetric input is rejected when either
//!
//! * some `x ∈ [-A, A]` has `Ξ(x) > Ξ(A) + ε` (a better mass point exists), or
//! * some support point has `|Ξ(x_i) − Ξ(A)| > ε` (the probabilities are off).
//!
//! `Ξ(A)` stands in for the unknown capacity, since the amplitude is always a
//! mass point of the optimal input. Ξ is even for symmetric inputs, so only
//! `[0, A]` is scanned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ChannelPair, SecrecyEvaluator, SymmetricInput};
use crate::numerics::QuadratureSpec;

/// Upper bound on the number of profile grid points.
pub const MAX_GRID_POINTS: usize = 50_000;

/// Stopping width of the golden-section refinement of the Ξ argmax.
pub const REFINE_TOL: f64 = 1e-9;

/// Default scan step `min(σ₁, A)/50`, widened if needed so the grid stays
/// under [`MAX_GRID_POINTS`].
pub fn default_grid_step(ch: &ChannelPair, amplitude: f64) -> f64 {
    let step = ch.sigma1().min(amplitude) / 50.0;
    step.max(amplitude / (MAX_GRID_POINTS - 1) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportViolation {
    pub half_point: f64,
    /// `Ξ(x_i) − Ξ(A)`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KktReport {
    pub valid: bool,
    pub epsilon: f64,
    /// `Ξ(A; P_X)`, the capacity estimate.
    pub capacity_proxy: f64,
    /// `max_x Ξ(x) − Ξ(A)` over the scanned points.
    pub max_profile_violation: f64,
    pub support_violations: Vec<SupportViolation>,
    /// Nonnegative representative of the Ξ argmax.
    pub candidate_x: f64,
    pub candidate_xi: f64,
    /// `(x, Ξ(x))` on the scan grid, ascending in `x`.
    pub profile: Vec<(f64, f64)>,
}

impl KktReport {
    /// The profile test fired: a point outside the support beats `Ξ(A)`.
    pub fn profile_fired(&self) -> bool {
        self.max_profile_violation > self.epsilon
    }

    /// The support test fired.
    pub fn support_fired(&self) -> bool {
        !self.support_violations.is_empty()
    }

    pub fn violating_points(&self) -> Vec<f64> {
        self.support_violations
            .iter()
            .map(|v| v.half_point)
            .collect()
    }
}

fn profile_grid(input: &SymmetricInput, grid_step: f64) -> Vec<f64> {
    let amp = input.amplitude();
    let count = (amp / grid_step).floor() as usize;
    let mut xs: Vec<f64> = (0..=count)
        .map(|k| k as f64 * grid_step)
        .filter(|&x| x <= amp)
        .collect();
    xs.push(amp);
    xs.extend_from_slice(input.points());
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn profile_with(ev: &SecrecyEvaluator, input: &SymmetricInput, grid_step: f64) -> Vec<(f64, f64)> {
    profile_grid(input, grid_step)
        .into_iter()
        .map(|x| (x, ev.xi(x)))
        .collect()
}

/// Ξ on `{0, h, 2h, …} ∪ {A} ∪ support`, restricted to `[0, A]`.
pub fn xi_profile(
    input: &SymmetricInput,
    ch: &ChannelPair,
    grid_step: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(grid_step > 0.0) {
        return Err(Error::domain(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let ev = SecrecyEvaluator::new(input, ch, &QuadratureSpec::default())?;
    Ok(profile_with(&ev, input, grid_step))
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub(crate) fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Runs both ε-KKT tests on the profile grid plus the exact support points.
pub fn validate(
    input: &SymmetricInput,
    ch: &ChannelPair,
    epsilon: f64,
    grid_step: f64,
) -> Result<KktReport> {
    validate_with(input, ch, epsilon, grid_step, &QuadratureSpec::default())
}

pub fn validate_with(
    input: &SymmetricInput,
    ch: &ChannelPair,
    epsilon: f64,
    grid_step: f64,
    quad: &QuadratureSpec,
) -> Result<KktReport> {
    if !(epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !(grid_step > 0.0) {
        return Err(Error::domain(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let amp = input.amplitude();
    let ev = SecrecyEvaluator::new(input, ch, quad)?;
    let profile = profile_with(&ev, input, grid_step);
    if let Some(&(x, v)) = profile.iter().find(|p| !p.1.is_finite()) {
        return Err(Error::Numerical(format!("Ξ({x}) evaluated to {v}")));
    }
    let xi_amp = ev.xi(amp);

    let &(grid_x, grid_v) = profile
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("profile contains A");
    let lo = (grid_x - grid_step).max(0.0);
    let hi = (grid_x + grid_step).min(amp);
    let (candidate_x, candidate_xi) = if hi > lo {
        let (x, v) = golden_section_max(|x| ev.xi(x), lo, hi, REFINE_TOL);
        if v > grid_v {
            (x, v)
        } else {
            (grid_x, grid_v)
        }
    } else {
        (grid_x, grid_v)
    };

    debug_assert!(
        (ev.xi(-candidate_x) - candidate_xi).abs() < 1e-9,
        "Ξ is not even at {candidate_x}"
    );

    let max_profile_violation = candidate_xi.max(grid_v) - xi_amp;
    let support_violations = support_violations_from(&ev, input, xi_amp, epsilon);
    let valid = max_profile_violation <= epsilon && support_violations.is_empty();
    Ok(KktReport {
        valid,
        epsilon,
        capacity_proxy: xi_amp,
        max_profile_violation,
        support_violations,
        candidate_x,
        candidate_xi,
        profile,
    })
}

fn support_violations_from(
    ev: &SecrecyEvaluator,
    input: &SymmetricInput,
    xi_amp: f64,
    epsilon: f64,
) -> Vec<SupportViolation> {
    let amp = input.amplitude();
    input
        .points()
        .iter()
        .filter(|&&x| x != amp)
        .filter_map(|&x| {
            let deviation = ev.xi(x) - xi_amp;
            (deviation.abs() > epsilon).then_some(SupportViolation {
                half_point: x,
                deviation,
            })
        })
        .collect()
}

/// Half-points whose Ξ leaves the ε-strip around `Ξ(A)`.
pub fn violating_set(input: &SymmetricInput, ch: &ChannelPair, epsilon: f64) -> Result<Vec<f64>> {
    if !(epsilon > 0.0) {
        return Err(Error::domain(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let ev = SecrecyEvaluator::new(input, ch, &QuadratureSpec::default())?;
    let xi_amp = ev.xi(input.amplitude());
    Ok(support_violations_from(&ev, input, xi_amp, epsilon)
        .into_iter()
        .map(|v| v.half_point)
        .collect())
}
