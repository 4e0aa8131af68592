//! The outer solver loop, support-size bounds, and amplitude sweeps.
//!
//! One solve repeats
//!
//! 1. `inner_loops` rounds of probability updates followed by location
//!    ascent,
//! 2. clustering of points closer than the minimum distance,
//! 3. ε-KKT validation,
//! 4. a support update when validation fails,
//!
//! until the candidate validates or `outer_max` passes are spent.

use std::f64::consts::{E, PI};

use log::{debug, info, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Phase, Result};
use crate::kkt::{default_grid_step, validate_with, KktReport};
use crate::model::{
    gaussian_input_mi, input_variance, ChannelPair, SecrecyEvaluator, SymmetricInput,
};
use crate::numerics::QuadratureSpec;
use crate::optimizer::{
    ascend_with, check_gradient, run_ba_with, spread, support_xi, AscentParams,
};
use crate::support_update::{cluster_counted, update_detailed, UpdateAction, UpdatePolicy};

/// Slack constant multiplying `ln(2 + A)` in [`support_cap`].
pub const CAP_LOG_SLACK: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientCheck {
    Never,
    FirstOuter,
    EveryOuter,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// KKT tolerance in nats.
    pub epsilon: f64,
    pub ascent: AscentParams,
    pub policy: UpdatePolicy,
    /// Rounds of (probability update, location ascent) per outer pass.
    pub inner_loops: usize,
    /// Bound on outer passes.
    pub outer_max: usize,
    /// KKT scan step; `None` means `min(σ₁, A)/50`.
    pub grid_step: Option<f64>,
    pub quadrature: QuadratureSpec,
    /// Leave the inner loop once the support is stationary (see
    /// [`SolverConfig::stationary`]). Off by default: the inner loop then
    /// always runs `inner_loops` rounds.
    pub early_exit: bool,
    pub gradient_check: GradientCheck,
    /// Non-pinned half-points whose weight falls to this level are dropped
    /// from the support before validation.
    pub prune_weight: f64,
    /// After a solve that changed the support or started cold, each
    /// non-pinned half-point lighter than this is tentatively removed; the
    /// smaller support is kept if it re-optimizes to a valid certificate.
    /// `0` disables the pass.
    pub reduce_weight: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 1e-4,
            ascent: AscentParams::default(),
            policy: UpdatePolicy::default(),
            inner_loops: 100,
            outer_max: 50,
            grid_step: None,
            quadrature: QuadratureSpec::default(),
            early_exit: false,
            gradient_check: GradientCheck::FirstOuter,
            prune_weight: 1e-6,
            reduce_weight: 0.25,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::domain("epsilon must be positive"));
        }
        if self.inner_loops == 0 || self.outer_max == 0 {
            return Err(Error::domain("iteration counts must be positive"));
        }
        if self.ascent.n_ba == 0 || self.ascent.n_ga == 0 {
            return Err(Error::domain("n_ba and n_ga must be positive"));
        }
        if self.quadrature.panels == 0 || self.quadrature.order == 0 {
            return Err(Error::domain(
                "quadrature panels and order must be positive",
            ));
        }
        if let Some(h) = self.grid_step {
            if !(h > 0.0) {
                return Err(Error::domain("grid_step must be positive"));
            }
        }
        if !(self.prune_weight >= 0.0 && self.prune_weight < 0.5) {
            return Err(Error::domain("prune_weight must lie in [0, 0.5)"));
        }
        if !(0.0..=1.0).contains(&self.reduce_weight) {
            return Err(Error::domain("reduce_weight must lie in [0, 1]"));
        }
        self.ascent.validate()?;
        self.policy.validate()
    }

    pub fn grid_step_for(&self, ch: &ChannelPair, amplitude: f64) -> f64 {
        self.grid_step
            .unwrap_or_else(|| default_grid_step(ch, amplitude))
    }

    /// Early-exit thresholds `(Ξ spread on the support, |Ξ'| at free points)`.
    pub fn stationary(&self) -> (f64, f64) {
        (0.05 * self.epsilon, 0.1 * self.epsilon.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub sigma1: f64,
    pub sigma2: f64,
    pub amplitude: f64,
    /// Secrecy-capacity estimate `Ξ(A; P_X)` in nats.
    pub capacity: f64,
    /// `I(X; Y₁) − I(X; Y₂)` of the final input; its gap to `capacity` is a
    /// convergence diagnostic.
    pub secrecy_information: f64,
    pub input: SymmetricInput,
    pub kkt: KktReport,
    pub mi_legit: f64,
    pub mi_eve: f64,
    /// `I` of a Gaussian input with the same variance, eavesdropper leg.
    pub gaussian_mi_eve: f64,
    pub input_variance: f64,
    pub full_support_size: usize,
    /// Cardinality floor with `I(X*; Y₂)` set to zero.
    pub card_lower_bound: f64,
    /// Cardinality floor using the measured `I(X*; Y₂)`.
    pub card_lower_bound_measured: f64,
    pub card_upper_cap: usize,
    pub outer_iterations: usize,
    pub cluster_events: usize,
    pub update_events: usize,
    /// Updates triggered by the support test alone.
    pub reset_updates: usize,
    /// Points removed by the support-minimality pass.
    pub reductions: usize,
    pub updates: Vec<UpdateAction>,
    /// Clustering fired on the accepted iterate: the minimum-distance
    /// constraint may be active at this amplitude.
    pub near_transition: bool,
    pub converged: bool,
    /// Differences of adjacent nonnegative support points, from the largest
    /// point downwards.
    pub gaps: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Upper cap on `|supp P_X*|`:
/// `ρ A²/σ₁² + 10·ln(2 + A)` with
/// `ρ = (2e+1)² r² + (r+1)²`, `r = (σ₂+σ₁)/(σ₂−σ₁)`, and never below 3.
pub fn support_cap(ch: &ChannelPair, amplitude: f64) -> Result<usize> {
    if !ch.is_degraded() {
        return Err(Error::domain(
            "support cap needs sigma1 < sigma2 (the capacity is zero otherwise)",
        ));
    }
    let (s1, s2) = (ch.sigma1(), ch.sigma2());
    let r = (s2 + s1) / (s2 - s1);
    let rho = (2.0 * E + 1.0).powi(2) * r * r + (r + 1.0).powi(2);
    let bound = rho * amplitude * amplitude / (s1 * s1) + CAP_LOG_SLACK * (2.0 + amplitude).ln();
    let cap = bound.ceil();
    Ok(if cap.is_finite() && cap < usize::MAX as f64 {
        (cap as usize).max(3)
    } else {
        usize::MAX
    })
}

/// Lower bound on `|supp P_X*|`:
/// `sqrt(1 + (2A²/(πeσ₁²)) / (1 + A²/σ₂²) · e^{I(X*;Y₂)})`.
/// Passing `mi_eve = 0` gives the weaker, information-free form.
pub fn card_lower_bound(ch: &ChannelPair, amplitude: f64, mi_eve: f64) -> f64 {
    let (s1, s2) = (ch.sigma1(), ch.sigma2());
    let a2 = amplitude * amplitude;
    let snr_term = (2.0 * a2 / (PI * E * s1 * s1)) / (1.0 + a2 / (s2 * s2));
    (1.0 + snr_term * mi_eve.exp()).sqrt()
}

/// Starting point: `m = ceil(card_lower_bound(·, ·, 0))` full points, laid
/// out as equally spaced half-points on `[0, A]` ending at `A`, with at
/// least the two half-points `{0, A}`. Probabilities are uniform over the
/// full support.
pub fn initial_input(ch: &ChannelPair, amplitude: f64) -> Result<SymmetricInput> {
    if !(amplitude > 0.0) {
        return Err(Error::domain("amplitude must be positive"));
    }
    let full = card_lower_bound(ch, amplitude, 0.0).ceil() as usize;
    let with_zero = full % 2 == 1;
    let half = if with_zero {
        full.div_ceil(2)
    } else {
        full / 2
    };
    let points: Vec<f64> = if half < 2 {
        vec![0.0, amplitude]
    } else if with_zero {
        (0..half)
            .map(|k| amplitude * k as f64 / (half - 1) as f64)
            .collect()
    } else {
        (1..=half)
            .map(|k| amplitude * k as f64 / half as f64)
            .collect()
    };
    let mut points = points;
    *points.last_mut().unwrap() = amplitude;
    SymmetricInput::uniform(amplitude, points)
}

fn prune(input: SymmetricInput, threshold: f64) -> SymmetricInput {
    let n = input.len();
    if n <= 1 || threshold <= 0.0 {
        return input;
    }
    let pinned = input.is_pinned();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| (pinned && i == n - 1) || input.weights()[i] > threshold)
        .collect();
    if keep.len() == n || keep.is_empty() {
        return input;
    }
    let total: f64 = keep.iter().map(|&i| input.weights()[i]).sum();
    let points = keep.iter().map(|&i| input.points()[i]).collect();
    let weights = keep.iter().map(|&i| input.weights()[i] / total).collect();
    SymmetricInput::from_parts(input.amplitude(), points, weights)
}

fn degenerate_report(ch: &ChannelPair, amplitude: f64, epsilon: f64) -> Result<SolveReport> {
    let input = SymmetricInput::point_mass_at_zero(amplitude)?;
    let kkt = KktReport {
        valid: true,
        epsilon,
        capacity_proxy: 0.0,
        max_profile_violation: 0.0,
        support_violations: Vec::new(),
        candidate_x: 0.0,
        candidate_xi: 0.0,
        profile: Vec::new(),
    };
    Ok(SolveReport {
        sigma1: ch.sigma1(),
        sigma2: ch.sigma2(),
        amplitude,
        capacity: 0.0,
        secrecy_information: 0.0,
        input,
        kkt,
        mi_legit: 0.0,
        mi_eve: 0.0,
        gaussian_mi_eve: 0.0,
        input_variance: 0.0,
        full_support_size: 1,
        card_lower_bound: 1.0,
        card_lower_bound_measured: 1.0,
        card_upper_cap: 1,
        outer_iterations: 0,
        cluster_events: 0,
        update_events: 0,
        reset_updates: 0,
        reductions: 0,
        updates: Vec::new(),
        near_transition: false,
        converged: true,
        gaps: Vec::new(),
        warnings: vec!["sigma1 >= sigma2: secrecy capacity is zero".into()],
    })
}

/// Differences of adjacent nonnegative support points, starting from the
/// largest pair.
pub fn adjacent_gaps(input: &SymmetricInput) -> Vec<f64> {
    input
        .points()
        .windows(2)
        .rev()
        .map(|w| w[1] - w[0])
        .collect()
}

/// Runs the inner rounds of one outer pass.
fn inner_rounds(
    mut cur: SymmetricInput,
    ch: &ChannelPair,
    cfg: &SolverConfig,
    outer: usize,
) -> Result<SymmetricInput> {
    let quad = &cfg.quadrature;
    let (spread_tol, slope_tol) = cfg.stationary();
    let ba_stop = cfg.early_exit.then_some(0.1 * spread_tol);
    for k in 0..cfg.inner_loops {
        cur = run_ba_with(&cur, ch, cfg.ascent.n_ba, quad, ba_stop)
            .map_err(|e| e.in_phase(outer, k, Phase::BlahutArimoto))?;
        cur = prune(cur, cfg.prune_weight);
        cur = ascend_with(&cur, ch, &cfg.ascent, quad)
            .map_err(|e| e.in_phase(outer, k, Phase::GradientAscent))?;
        if cfg.early_exit {
            let ev = SecrecyEvaluator::new(&cur, ch, quad)
                .map_err(|e| e.in_phase(outer, k, Phase::GradientAscent))?;
            let xis = support_xi(&ev, &cur);
            let free = if cur.is_pinned() {
                cur.len() - 1
            } else {
                cur.len()
            };
            let max_slope = cur.points()[..free]
                .iter()
                .filter(|&&x| x > 0.0)
                .map(|&x| ev.xi_slope(x).abs())
                .fold(0.0, f64::max);
            if spread(&xis) < spread_tol && max_slope < slope_tol {
                debug!("outer {outer}: stationary after {} inner rounds", k + 1);
                break;
            }
        }
    }
    Ok(cur)
}

/// Maximum number of removal attempts in [`reduce_support`].
const MAX_REDUCTIONS: usize = 4;

/// Tries to certify a smaller support: each light non-pinned point is
/// removed in turn (lightest first), the rest re-optimized and validated.
/// Returns the input and report that were finally accepted.
fn reduce_support(
    mut cur: SymmetricInput,
    mut report: KktReport,
    ch: &ChannelPair,
    cfg: &SolverConfig,
    grid_step: f64,
    outer: usize,
) -> Result<(SymmetricInput, KktReport, usize, bool)> {
    let mut removed = 0;
    let mut merged = false;
    let mut tried: Vec<f64> = Vec::new();
    for _ in 0..MAX_REDUCTIONS {
        let n = cur.len();
        let free = if cur.is_pinned() { n - 1 } else { n };
        let candidate = (0..free)
            .filter(|&i| cur.weights()[i] < cfg.reduce_weight && !tried.contains(&cur.points()[i]))
            .min_by(|&a, &b| cur.weights()[a].total_cmp(&cur.weights()[b]));
        let Some(i) = candidate else { break };
        tried.push(cur.points()[i]);
        let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        let total: f64 = keep.iter().map(|&k| cur.weights()[k]).sum();
        let trial = SymmetricInput::from_parts(
            cur.amplitude(),
            keep.iter().map(|&k| cur.points()[k]).collect(),
            keep.iter().map(|&k| cur.weights()[k] / total).collect(),
        );
        let trial = inner_rounds(trial, ch, cfg, outer)?;
        let (trial, merges) = cluster_counted(&prune(trial, cfg.prune_weight), &cfg.policy);
        let trial_report = validate_with(&trial, ch, cfg.epsilon, grid_step, &cfg.quadrature)
            .map_err(|e| e.in_phase(outer, cfg.inner_loops, Phase::Validation))?;
        if trial_report.valid && trial.len() < n {
            debug!("support reduced from {} to {} half-points", n, trial.len());
            cur = trial;
            report = trial_report;
            removed += 1;
            merged = merges > 0;
        }
    }
    Ok((cur, report, removed, merged))
}

/// Computes the secrecy capacity and an optimal input at one amplitude.
///
/// When `sigma1 >= sigma2` the capacity is zero and a point mass at the
/// origin is returned without iterating.
pub fn solve(
    ch: &ChannelPair,
    amplitude: f64,
    cfg: &SolverConfig,
    init: Option<&SymmetricInput>,
) -> Result<SolveReport> {
    if !(amplitude > 0.0) || !amplitude.is_finite() {
        return Err(Error::domain(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    cfg.validate()?;
    if !ch.is_degraded() {
        return degenerate_report(ch, amplitude, cfg.epsilon);
    }
    let cap = support_cap(ch, amplitude)?;
    let grid_step = cfg.grid_step_for(ch, amplitude);
    let quad = &cfg.quadrature;

    let mut cur = match init {
        Some(start) if start.amplitude() == amplitude && start.is_pinned() => start.clone(),
        Some(start) => start.rescaled_pin(amplitude)?,
        None => initial_input(ch, amplitude)?,
    };

    let mut cluster_events = 0;
    let mut updates = Vec::new();
    let mut warnings = Vec::new();
    let mut outer = 0;
    let mut near_transition;
    let mut converged = false;
    let kkt = loop {
        outer += 1;
        let check_now = match cfg.gradient_check {
            GradientCheck::Never => false,
            GradientCheck::FirstOuter => outer == 1,
            GradientCheck::EveryOuter => true,
        };
        if check_now {
            check_gradient(&cur, ch, quad, cfg.ascent.fd_check_tol)
                .map_err(|e| e.in_phase(outer, 0, Phase::GradientCheck))?;
        }

        cur = inner_rounds(cur, ch, cfg, outer)?;
        cur = prune(cur, cfg.prune_weight);
        let (clustered, merges) = cluster_counted(&cur, &cfg.policy);
        cur = clustered;
        cluster_events += merges;
        near_transition = merges > 0;

        let report = validate_with(&cur, ch, cfg.epsilon, grid_step, quad)
            .map_err(|e| e.in_phase(outer, cfg.inner_loops, Phase::Validation))?;
        info!(
            "A={amplitude}: outer {outer}, |supp|={}, Ξ(A)={:.9}, profile gap={:.3e}, strip violations={}",
            cur.full_support_size(),
            report.capacity_proxy,
            report.max_profile_violation,
            report.support_violations.len()
        );
        if report.valid {
            converged = true;
            break report;
        }
        if outer >= cfg.outer_max {
            warnings.push(format!("no valid distribution after {outer} outer passes"));
            break report;
        }
        let (next, action) = update_detailed(&cur, &report, &cfg.policy)
            .map_err(|e| e.in_phase(outer, cfg.inner_loops, Phase::Update))?;
        if next.full_support_size() > cap {
            warnings.push(format!(
                "support update to {} points refused: cap is {cap}",
                next.full_support_size()
            ));
            break report;
        }
        debug!("A={amplitude}: update {action:?}");
        updates.push(action);
        cur = next;
    };

    let mut kkt = kkt;
    let mut reductions = 0;
    if converged && cfg.reduce_weight > 0.0 && (init.is_none() || !updates.is_empty()) {
        let (reduced, report, removed, merged) =
            reduce_support(cur, kkt, ch, cfg, grid_step, outer)?;
        cur = reduced;
        kkt = report;
        reductions = removed;
        if removed > 0 {
            near_transition = merged;
        }
    }
    let input = SymmetricInput::new(amplitude, cur.points().to_vec(), cur.weights().to_vec())
        .map_err(|e| e.in_phase(outer, 0, Phase::Report))?;
    let ev =
        SecrecyEvaluator::new(&input, ch, quad).map_err(|e| e.in_phase(outer, 0, Phase::Report))?;
    let mi_legit = ev.mi_legit().max(0.0);
    let mi_eve = ev.mi_eve().max(0.0);
    let variance = input_variance(&input);
    let full_support_size = input.full_support_size();
    let card_floor = card_lower_bound(ch, amplitude, 0.0);
    let card_floor_measured = card_lower_bound(ch, amplitude, mi_eve);
    if converged && (full_support_size as f64) < card_floor_measured.ceil() {
        let msg = format!(
            "support size {full_support_size} below cardinality floor {card_floor_measured:.4}"
        );
        warn!("A={amplitude}: {msg}");
        warnings.push(msg);
    }
    let reset_updates = updates
        .iter()
        .filter(|a| matches!(a, UpdateAction::Reset | UpdateAction::Dropped { .. }))
        .count();
    if reset_updates > 0 {
        warnings.push(format!(
            "{reset_updates} update(s) fired on the support test alone"
        ));
    }
    Ok(SolveReport {
        sigma1: ch.sigma1(),
        sigma2: ch.sigma2(),
        amplitude,
        capacity: kkt.capacity_proxy,
        secrecy_information: ev.secrecy_information(),
        gaps: adjacent_gaps(&input),
        input,
        kkt,
        mi_legit,
        mi_eve,
        gaussian_mi_eve: gaussian_input_mi(variance, ch.sigma2()),
        input_variance: variance,
        full_support_size,
        card_lower_bound: card_floor,
        card_lower_bound_measured: card_floor_measured,
        card_upper_cap: cap,
        outer_iterations: outer,
        cluster_events,
        update_events: updates.len(),
        reset_updates,
        reductions,
        updates,
        near_transition,
        converged,
        warnings,
    })
}

/// Solves at each amplitude in increasing order, warm-starting every solve
/// from the most recent converged input with its pin moved to the new
/// amplitude. Failures are recorded per entry and the sweep continues.
pub fn sweep(
    ch: &ChannelPair,
    amplitudes: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<Result<SolveReport>>> {
    if amplitudes.is_empty() {
        return Err(Error::domain("sweep needs at least one amplitude"));
    }
    if amplitudes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            "sweep amplitudes must be strictly increasing",
        ));
    }
    let mut warm: Option<SymmetricInput> = None;
    let mut out = Vec::with_capacity(amplitudes.len());
    for &a in amplitudes {
        let result = solve(ch, a, cfg, warm.as_ref());
        if let Ok(rep) = &result {
            if rep.converged && ch.is_degraded() {
                warm = Some(rep.input.clone());
            }
        }
        out.push(result);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ch(v1: f64, v2: f64) -> ChannelPair {
        ChannelPair::from_variances(v1, v2).unwrap()
    }

    #[test]
    fn cap_matches_hand_arithmetic() {
        let c = ch(1.0, 10.0);
        let r = (10f64.sqrt() + 1.0) / (10f64.sqrt() - 1.0);
        assert_abs_diff_eq!(r, 1.925, epsilon = 1e-3);
        let rho = (2.0 * E + 1.0).powi(2) * r * r + (r + 1.0).powi(2);
        assert_abs_diff_eq!(rho, 162.07, epsilon = 0.01);
        let cap = support_cap(&c, 2.0).unwrap();
        assert_eq!(cap, (4.0 * rho + 10.0 * 4f64.ln()).ceil() as usize);
        assert!((655..=665).contains(&cap), "{cap}");
    }

    #[test]
    fn cap_is_monotone_with_floor() {
        let c = ch(1.0, 1.5);
        let mut prev = 0;
        for k in 0..200 {
            let cap = support_cap(&c, 1e-4 + 0.05 * k as f64).unwrap();
            assert!(cap >= prev && cap >= 3);
            prev = cap;
        }
        assert!(support_cap(&ch(1.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn card_lower_bound_values() {
        let c = ch(1.0, 10.0);
        assert_abs_diff_eq!(card_lower_bound(&c, 1e-8, 0.0), 1.0, epsilon = 1e-12);
        let expected = (1.0 + (8.0 / (PI * E)) / 1.4f64).sqrt();
        assert_abs_diff_eq!(card_lower_bound(&c, 2.0, 0.0), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(card_lower_bound(&c, 2.0, 0.0), 1.292, epsilon = 1e-3);
        assert!(card_lower_bound(&c, 2.0, 0.3) > card_lower_bound(&c, 2.0, 0.0));
    }

    #[test]
    fn initial_input_layouts() {
        let small = initial_input(&ch(1.0, 10.0), 0.3).unwrap();
        assert_eq!(small.points(), &[0.0, 0.3]);
        for w in small.full_support() {
            assert_abs_diff_eq!(w.1, 1.0 / 3.0, epsilon = 1e-15);
        }
        // σ₂ → ∞ with A = 8.4: bound ≈ sqrt(1 + 2A²/(πe)) ≈ 4.2 → 5 full points.
        let wide = ChannelPair::new(1.0, 1e6).unwrap();
        let amp = 8.4;
        let b = card_lower_bound(&wide, amp, 0.0);
        assert!(b > 4.0 && b < 5.0, "{b}");
        let init = initial_input(&wide, amp).unwrap();
        assert_eq!(init.points(), &[0.0, amp / 2.0, amp]);
        assert!(init.is_pinned());
    }

    #[test]
    fn degenerate_channel_short_circuits() {
        let rep = solve(&ch(1.0, 1.0), 2.0, &SolverConfig::default(), None).unwrap();
        assert_eq!(rep.capacity, 0.0);
        assert!(rep.converged && rep.kkt.valid);
        assert_eq!(rep.input.points(), &[0.0]);
        let swapped = solve(&ch(1.5, 1.0), 2.0, &SolverConfig::default(), None).unwrap();
        assert_eq!(swapped.capacity, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            epsilon: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            outer_max: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn sweep_rejects_unordered_amplitudes() {
        let cfg = SolverConfig::default();
        assert!(sweep(&ch(1.0, 10.0), &[1.0, 0.5], &cfg).is_err());
        assert!(sweep(&ch(1.0, 10.0), &[], &cfg).is_err());
    }

    #[test]
    fn gaps_run_from_the_top() {
        let inp =
            SymmetricInput::new(5.0, vec![0.0, 1.5, 3.5, 5.0], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(adjacent_gaps(&inp), vec![1.5, 2.0, 1.5]);
    }
}
