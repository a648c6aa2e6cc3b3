//! Direct evaluation of the weighted distance sum and its gradient.

use crate::geometry::{PlanarPoint, SpatialPoint};

/// `Σ m_j |p - P_j|`
pub fn weighted_distance_sum(anchors: &[PlanarPoint], weights: &[f64], p: PlanarPoint) -> f64 {
    anchors
        .iter()
        .zip(weights)
        .map(|(a, m)| m * p.distance(a))
        .sum()
}

pub fn weighted_distance_sum_3d(anchors: &[SpatialPoint], weights: &[f64], p: SpatialPoint) -> f64 {
    anchors
        .iter()
        .zip(weights)
        .map(|(a, m)| m * p.distance(a))
        .sum()
}

/// Gradient of the weighted distance sum, i.e. the left-hand sides of the
/// stationarity system. Undefined (returns `None`) when `p` sits on an anchor.
pub fn gradient(anchors: &[PlanarPoint], weights: &[f64], p: PlanarPoint) -> Option<PlanarPoint> {
    let mut g = PlanarPoint::default();
    for (a, m) in anchors.iter().zip(weights) {
        let diff = p - *a;
        let r = diff.norm();
        if r == 0.0 {
            return None;
        }
        g = g + diff * (m / r);
    }
    Some(g)
}

pub fn gradient_3d(anchors: &[SpatialPoint], weights: &[f64], p: SpatialPoint) -> Option<SpatialPoint> {
    let mut g = SpatialPoint::default();
    for (a, m) in anchors.iter().zip(weights) {
        let diff = p - *a;
        let r = diff.norm();
        if r == 0.0 {
            return None;
        }
        g = g + diff * (m / r);
    }
    Some(g)
}

/// Magnitude of the pull the other anchors exert on anchor `j`:
/// `|Σ_{ℓ≠j} m_ℓ (P_ℓ - P_j)/|P_ℓ - P_j||`. Anchor `j` minimizes the objective
/// exactly when this does not exceed `m_j`.
pub fn anchor_pull(anchors: &[PlanarPoint], weights: &[f64], j: usize) -> f64 {
    let here = anchors[j];
    let mut pull = PlanarPoint::default();
    for (l, (a, m)) in anchors.iter().zip(weights).enumerate() {
        if l == j {
            continue;
        }
        let diff = *a - here;
        let r = diff.norm();
        if r > 0.0 {
            pull = pull + diff * (m / r);
        }
    }
    pull.norm()
}
