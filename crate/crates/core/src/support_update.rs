//! Support maintenance: merging points closer than a minimum distance, and
//! reshaping the support around the Ξ argmax after a failed KKT check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kkt::KktReport;
use crate::model::{uniform_half_weights, SymmetricInput};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpdatePolicy {
    /// Points closer than this are merged.
    pub min_dist: f64,
    /// Width of the window in which two violating points are replaced by the
    /// candidate.
    pub delta: f64,
}

impl Default for UpdatePolicy {
    fn default() -> Self {
        UpdatePolicy {
            min_dist: 1e-2,
            delta: 0.1,
        }
    }
}

impl UpdatePolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_dist > 0.0) || !(self.delta > self.min_dist) {
            return Err(Error::domain(format!(
                "need 0 < min_dist < delta, got min_dist {} and delta {}",
                self.min_dist, self.delta
            )));
        }
        Ok(())
    }
}

/// What [`update`] did to the support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpdateAction {
    /// Two violating points `left`, `right` were replaced by the candidate.
    Replaced { left: f64, right: f64, at: f64 },
    /// The candidate was added and probabilities reset uniform.
    Inserted { at: f64 },
    /// The candidate fell within the minimum distance of an existing point;
    /// probabilities were reset uniform on the unchanged support.
    Absorbed { into: f64 },
    /// Only the support test fired and some non-pinned points sat more than
    /// ε below `Ξ(A)`; those points were removed and the remaining weights
    /// renormalized.
    Dropped { count: usize },
    /// Only the support test fired, every violator above `Ξ(A)`;
    /// probabilities reset uniform.
    Reset,
}

/// Merges every maximal run of consecutive half-points whose gaps are below
/// `min_dist` into one point carrying the run's total weight, placed at the
/// probability-weighted mean. A run containing the pin lands on the pin; a
/// run containing the origin lands on the origin. A lone positive point
/// whose mirror pair is closer than `min_dist` collapses onto the origin.
pub fn cluster(input: &SymmetricInput, policy: &UpdatePolicy) -> SymmetricInput {
    cluster_counted(input, policy).0
}

/// As [`cluster`], also returning the number of merges performed.
pub fn cluster_counted(input: &SymmetricInput, policy: &UpdatePolicy) -> (SymmetricInput, usize) {
    let amp = input.amplitude();
    let pinned = input.is_pinned();
    let pts = input.points();
    let ws = input.weights();
    let mut points: Vec<f64> = Vec::with_capacity(pts.len());
    let mut weights: Vec<f64> = Vec::with_capacity(pts.len());
    let mut merges = 0;

    let mut i = 0;
    while i < pts.len() {
        let mut j = i + 1;
        while j < pts.len() && pts[j] - pts[j - 1] < policy.min_dist {
            j += 1;
        }
        let run_w: f64 = ws[i..j].iter().sum();
        let location = if j - i == 1 {
            pts[i]
        } else {
            merges += j - i - 1;
            if pinned && j == pts.len() {
                amp
            } else if pts[i] == 0.0 {
                0.0
            } else {
                pts[i..j]
                    .iter()
                    .zip(&ws[i..j])
                    .map(|(x, w)| x * w)
                    .sum::<f64>()
                    / run_w
            }
        };
        points.push(location);
        weights.push(run_w);
        i = j;
    }

    if points.len() > 1 || !pinned {
        if let Some(first) = points.first_mut() {
            if *first > 0.0 && 2.0 * *first < policy.min_dist {
                *first = 0.0;
                merges += 1;
            }
        }
    }

    if merges == 0 {
        return (input.clone(), 0);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    (SymmetricInput::from_parts(amp, points, weights), merges)
}

/// Reshapes the support of an input whose KKT report failed.
pub fn update(
    input: &SymmetricInput,
    report: &KktReport,
    policy: &UpdatePolicy,
) -> Result<SymmetricInput> {
    update_detailed(input, report, policy).map(|(out, _)| out)
}

pub fn update_detailed(
    input: &SymmetricInput,
    report: &KktReport,
    policy: &UpdatePolicy,
) -> Result<(SymmetricInput, UpdateAction)> {
    if report.valid {
        return Err(Error::Contract(
            "support update requested for a distribution that passed validation".into(),
        ));
    }
    let amp = input.amplitude();
    let x_hat = report.candidate_x.clamp(0.0, amp);

    if report.profile_fired() && report.support_fired() {
        let mut violating = report.violating_points();
        violating.sort_by(f64::total_cmp);
        let bracket = violating
            .iter()
            .enumerate()
            .flat_map(|(a, &x1)| violating[a + 1..].iter().map(move |&x2| (x1, x2)))
            .filter(|&(x1, x2)| x2 - x1 < policy.delta && x1 <= x_hat && x_hat <= x2)
            .min_by(|p, q| (p.1 - p.0).total_cmp(&(q.1 - q.0)));
        if let Some((x1, x2)) = bracket {
            let mut points = Vec::with_capacity(input.len() - 1);
            let mut weights = Vec::with_capacity(input.len() - 1);
            let mut merged_w = 0.0;
            for (&x, &w) in input.points().iter().zip(input.weights()) {
                if x == x1 || x == x2 {
                    merged_w += w;
                } else {
                    points.push(x);
                    weights.push(w);
                }
            }
            let at = points.partition_point(|&p| p < x_hat);
            points.insert(at, x_hat);
            weights.insert(at, merged_w);
            let out = SymmetricInput::from_parts(amp, points, weights);
            return Ok((
                out,
                UpdateAction::Replaced {
                    left: x1,
                    right: x2,
                    at: x_hat,
                },
            ));
        }
    }

    let mut points = input.points().to_vec();
    let action = if report.profile_fired() {
        let target = if 2.0 * x_hat < policy.min_dist {
            0.0
        } else {
            x_hat
        };
        match points
            .iter()
            .copied()
            .find(|&p| (p - target).abs() < policy.min_dist)
        {
            Some(existing) => UpdateAction::Absorbed { into: existing },
            None => {
                let at = points.partition_point(|&p| p < target);
                points.insert(at, target);
                UpdateAction::Inserted { at: target }
            }
        }
    } else {
        let low: Vec<f64> = report
            .support_violations
            .iter()
            .filter(|v| v.deviation < 0.0 && v.half_point < amp)
            .map(|v| v.half_point)
            .collect();
        if !low.is_empty() {
            let (points, mut weights): (Vec<f64>, Vec<f64>) = input
                .points()
                .iter()
                .zip(input.weights())
                .filter(|(x, _)| !low.contains(x))
                .unzip();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            let out = SymmetricInput::from_parts(amp, points, weights);
            return Ok((out, UpdateAction::Dropped { count: low.len() }));
        }
        UpdateAction::Reset
    };
    let weights = uniform_half_weights(&points);
    Ok((SymmetricInput::from_parts(amp, points, weights), action))
}
