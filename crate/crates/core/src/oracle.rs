//! Independent numerical checks for the closed forms.
//!
//! Nothing here touches the closed-form coefficients: the Weiszfeld iteration
//! and the grid search only ever evaluate the objective and its gradient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{max_pairwise_distance_2d, PlanarPoint};
use crate::objective::{gradient, weighted_distance_sum};

/// Distance (relative to the anchor scale) below which a point counts as
/// sitting on an anchor.
pub const ANCHOR_COLLISION: f64 = 1e-14;

/// Norm of the objective gradient at `candidate`.
pub fn stationarity_residual(
    anchors: &[PlanarPoint],
    weights: &[f64],
    candidate: PlanarPoint,
) -> Result<f64> {
    let snap = ANCHOR_COLLISION * max_pairwise_distance_2d(anchors);
    if let Some(j) = anchors.iter().position(|a| a.distance(&candidate) <= snap) {
        return Err(Error::CandidateAtAnchor(j));
    }
    gradient(anchors, weights, candidate)
        .map(|g| g.norm())
        .ok_or(Error::CandidateAtAnchor(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeiszfeldConfig {
    pub max_iter: usize,
    /// Step tolerance relative to the largest anchor distance.
    pub step_tol: f64,
}

impl Default for WeiszfeldConfig {
    fn default() -> Self {
        Self {
            max_iter: 1_000_000,
            step_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub point: PlanarPoint,
    pub iterations: usize,
    pub final_step: f64,
    pub converged: bool,
    /// 0-based index of the anchor the iteration settled on, if any.
    pub locked_vertex: Option<usize>,
}

/// Weighted-median fixed-point iteration started from the weighted centroid.
pub fn weiszfeld(
    anchors: &[PlanarPoint],
    weights: &[f64],
    config: WeiszfeldConfig,
) -> Result<IterationReport> {
    weiszfeld_observed(anchors, weights, config, |_, _, _| {})
}

/// Same as [`weiszfeld`], calling `observe(iteration, point, objective)` after
/// every step.
pub fn weiszfeld_observed<F>(
    anchors: &[PlanarPoint],
    weights: &[f64],
    config: WeiszfeldConfig,
    mut observe: F,
) -> Result<IterationReport>
where
    F: FnMut(usize, PlanarPoint, f64),
{
    let scale = max_pairwise_distance_2d(anchors);
    let snap = ANCHOR_COLLISION * scale;
    let step_tol = config.step_tol * scale;
    let total: f64 = weights.iter().sum();

    let mut x = anchors
        .iter()
        .zip(weights)
        .fold(PlanarPoint::default(), |acc, (a, m)| acc + *a * *m)
        * (1.0 / total);
    let mut step = f64::INFINITY;

    for iteration in 1..=config.max_iter {
        if let Some(j) = anchors.iter().position(|a| a.distance(&x) <= snap) {
            match pull_away(anchors, weights, j) {
                None => return Ok(locked(anchors, j, iteration, step)),
                Some(next) => {
                    step = next.distance(&x);
                    x = next;
                    observe(iteration, x, weighted_distance_sum(anchors, weights, x));
                    continue;
                }
            }
        }

        let mut num = PlanarPoint::default();
        let mut den = 0.0;
        for (a, m) in anchors.iter().zip(weights) {
            let w = m / a.distance(&x);
            num = num + *a * w;
            den += w;
        }
        let next = num * (1.0 / den);
        step = next.distance(&x);
        x = next;
        observe(iteration, x, weighted_distance_sum(anchors, weights, x));

        if step < step_tol {
            return Ok(settle(anchors, weights, x, iteration, step, true));
        }
    }

    let report = settle(anchors, weights, x, config.max_iter, step, false);
    if report.converged {
        Ok(report)
    } else {
        Err(Error::MaxIterationsExceeded(report))
    }
}

/// Resultant of the unit pulls the other anchors exert on anchor `j`.
fn resultant_pull(anchors: &[PlanarPoint], weights: &[f64], j: usize) -> PlanarPoint {
    let here = anchors[j];
    anchors
        .iter()
        .zip(weights)
        .enumerate()
        .filter(|(l, _)| *l != j)
        .fold(PlanarPoint::default(), |acc, (_, (a, m))| {
            let diff = *a - here;
            acc + diff * (m / diff.norm())
        })
}

/// `None` when anchor `j` is optimal; otherwise the point reached by stepping
/// off the anchor along the resultant pull.
fn pull_away(anchors: &[PlanarPoint], weights: &[f64], j: usize) -> Option<PlanarPoint> {
    let pull = resultant_pull(anchors, weights, j);
    let magnitude = pull.norm();
    if magnitude <= weights[j] {
        return None;
    }
    let here = anchors[j];
    let curvature: f64 = anchors
        .iter()
        .zip(weights)
        .enumerate()
        .filter(|(l, _)| *l != j)
        .map(|(_, (a, m))| m / a.distance(&here))
        .sum();
    let length = (magnitude - weights[j]) / curvature;
    Some(here + pull * (length / magnitude))
}

fn locked(anchors: &[PlanarPoint], j: usize, iterations: usize, final_step: f64) -> IterationReport {
    IterationReport {
        point: anchors[j],
        iterations,
        final_step,
        converged: true,
        locked_vertex: Some(j),
    }
}

/// Final classification: if the anchor nearest the last iterate is itself
/// optimal, it is the unique minimizer and the report locks onto it.
fn settle(
    anchors: &[PlanarPoint],
    weights: &[f64],
    x: PlanarPoint,
    iterations: usize,
    final_step: f64,
    converged: bool,
) -> IterationReport {
    let nearest = (0..anchors.len())
        .min_by(|&a, &b| anchors[a].distance(&x).total_cmp(&anchors[b].distance(&x)))
        .unwrap_or(0);
    if resultant_pull(anchors, weights, nearest).norm() <= weights[nearest] {
        return locked(anchors, nearest, iterations, final_step);
    }
    IterationReport {
        point: x,
        iterations,
        final_step,
        converged,
        locked_vertex: None,
    }
}

/// Brute-force minimum over a grid covering the anchors' bounding box, with
/// pitch `resolution × extent`, followed by two 10× finer local passes.
pub fn grid_refine(anchors: &[PlanarPoint], weights: &[f64], resolution: f64) -> PlanarPoint {
    let (mut lo, mut hi) = (anchors[0], anchors[0]);
    for a in anchors {
        lo = PlanarPoint::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = PlanarPoint::new(hi.x.max(a.x), hi.y.max(a.y));
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    let mut pitch = resolution * extent;
    let mut best = scan(anchors, weights, lo, hi, pitch);
    for _ in 0..2 {
        let half = PlanarPoint::new(2.0 * pitch, 2.0 * pitch);
        pitch /= 10.0;
        best = scan(anchors, weights, best - half, best + half, pitch);
    }
    best
}

fn scan(
    anchors: &[PlanarPoint],
    weights: &[f64],
    lo: PlanarPoint,
    hi: PlanarPoint,
    pitch: f64,
) -> PlanarPoint {
    let nx = ((hi.x - lo.x) / pitch).ceil() as usize;
    let ny = ((hi.y - lo.y) / pitch).ceil() as usize;
    let mut best = lo;
    let mut best_value = f64::INFINITY;
    for i in 0..=nx {
        let x = (lo.x + i as f64 * pitch).min(hi.x);
        for k in 0..=ny {
            let p = PlanarPoint::new(x, (lo.y + k as f64 * pitch).min(hi.y));
            let v = weighted_distance_sum(anchors, weights, p);
            if v < best_value {
                best_value = v;
                best = p;
            }
        }
    }
    // Anchors are always candidates; the minimum may sit exactly on one.
    for a in anchors {
        let v = weighted_distance_sum(anchors, weights, *a);
        if v < best_value {
            best_value = v;
            best = *a;
        }
    }
    best
}
