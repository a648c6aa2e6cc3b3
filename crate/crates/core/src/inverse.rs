//! Inverse problem: weights that put the minimizer at a prescribed point.
//!
//! For a target `P*` strictly inside the triangle (tetrahedron), weight
//! `m_j = |P* P_j| · D_j`, where `D_j` is the orientation determinant of the
//! simplex with `P_j` replaced by `P*`, makes `P*` stationary. The weights are
//! defined up to a common positive factor; they are reported normalized to
//! unit sum along with that factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    det3, determinant, max_pairwise_distance_3d, signed_doubled_area, signed_sextuple_volume,
    PlanarPoint, SpatialPoint,
};
use crate::objective::{gradient, gradient_3d};
use crate::solver::{check_noncollinear, DEFAULT_COLLINEARITY_EPS};

/// Minimum barycentric coordinate (relative to their unit sum) for a target to
/// count as strictly interior.
pub const INTERIOR_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseSolution {
    /// Normalized weights in the caller's anchor order; positive, unit sum.
    pub weights: Vec<f64>,
    /// Sum of the unnormalized weights; `weights[j] * scale` recovers them.
    pub scale: f64,
    /// Minimum objective value under the unnormalized weights.
    pub min_value: f64,
    /// Power of the target with respect to the circumscribed circle (sphere).
    pub power: f64,
    /// Anchor order used internally to get a positive orientation:
    /// `order[i]` is the caller index of the i-th oriented anchor.
    pub order: Vec<usize>,
    /// Gradient norm of the normalized objective at the target.
    pub stationarity_residual: f64,
}

impl InverseSolution {
    pub fn unnormalized_weights(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w * self.scale).collect()
    }
}

/// Anchors reordered counterclockwise, with the order that achieves it.
fn counterclockwise(anchors: [PlanarPoint; 3]) -> Result<([PlanarPoint; 3], [usize; 3], f64)> {
    check_noncollinear(anchors, DEFAULT_COLLINEARITY_EPS)?;
    let s = signed_doubled_area(anchors[0], anchors[1], anchors[2]);
    if s > 0.0 {
        Ok((anchors, [0, 1, 2], s))
    } else {
        Ok(([anchors[0], anchors[2], anchors[1]], [0, 2, 1], -s))
    }
}

/// Sub-determinants with the target substituted for each anchor, in the
/// given (counterclockwise) order.
fn substituted_areas(q: &[PlanarPoint; 3], target: PlanarPoint) -> [f64; 3] {
    [
        signed_doubled_area(target, q[1], q[2]),
        signed_doubled_area(q[0], target, q[2]),
        signed_doubled_area(q[0], q[1], target),
    ]
}

fn require_interior(sub: &[f64], total: f64) -> Result<()> {
    let bary: Vec<f64> = sub.iter().map(|s| s / total).collect();
    if bary.iter().all(|b| *b > INTERIOR_THRESHOLD) {
        Ok(())
    } else {
        Err(Error::TargetNotInterior(bary))
    }
}

/// The 4×4 determinant
///
/// ```text
/// | 1        1        1        1       |
/// | x        x1       x2       x3      |
/// | y        y1       y2       y3      |
/// | x²+y²    x1²+y1²  x2²+y2²  x3²+y3² |
/// ```
///
/// evaluated in a frame centred on `p` (row operations leave it unchanged).
fn lifted_determinant_2d(anchors: &[PlanarPoint; 3], p: PlanarPoint) -> f64 {
    let d = anchors.map(|a| a - p);
    det3([
        [d[0].x, d[1].x, d[2].x],
        [d[0].y, d[1].y, d[2].y],
        [d[0].norm_squared(), d[1].norm_squared(), d[2].norm_squared()],
    ])
}

/// Weights for which `target` minimizes the weighted distance sum.
pub fn inverse_weights_2d(anchors: [PlanarPoint; 3], target: PlanarPoint) -> Result<InverseSolution> {
    if !target.is_finite() {
        return Err(Error::NonFiniteCoordinates);
    }
    let (q, order, area) = counterclockwise(anchors)?;
    let sub = substituted_areas(&q, target);
    require_interior(&sub, area)?;

    let raw: Vec<f64> = (0..3).map(|j| target.distance(&q[j]) * sub[j]).collect();
    let scale: f64 = raw.iter().sum();
    let mut weights = vec![0.0; 3];
    for (i, &caller) in order.iter().enumerate() {
        weights[caller] = raw[i] / scale;
    }
    let min_value = lifted_determinant_2d(&q, target);
    let power = -min_value / area;
    let stationarity_residual = gradient(&anchors, &weights, target)
        .map(|g| g.norm())
        .ok_or(Error::TargetNotInterior(vec![]))?;

    Ok(InverseSolution {
        weights,
        scale,
        min_value,
        power,
        order: order.to_vec(),
        stationarity_residual,
    })
}

/// Minimum value for the unnormalized inverse weights, as a 4×4 determinant.
pub fn inverse_min_value_2d(anchors: [PlanarPoint; 3], target: PlanarPoint) -> Result<f64> {
    let (q, _, area) = counterclockwise(anchors)?;
    require_interior(&substituted_areas(&q, target), area)?;
    Ok(lifted_determinant_2d(&q, target))
}

/// Power of `p` with respect to the circumcircle of the anchors, from the
/// lifted determinant divided by minus the signed doubled area.
pub fn power_of_point_2d(anchors: [PlanarPoint; 3], p: PlanarPoint) -> Result<f64> {
    check_noncollinear(anchors, DEFAULT_COLLINEARITY_EPS)?;
    let signed = signed_doubled_area(anchors[0], anchors[1], anchors[2]);
    Ok(-lifted_determinant_2d(&anchors, p) / signed)
}

/// Circumcenter of three noncollinear points.
pub fn circumcenter_2d(anchors: [PlanarPoint; 3]) -> Result<PlanarPoint> {
    check_noncollinear(anchors, DEFAULT_COLLINEARITY_EPS)?;
    let [a, b, c] = anchors;
    let (u, v) = (b - a, c - a);
    let den = 2.0 * (u.x * v.y - u.y * v.x);
    let (uu, vv) = (u.norm_squared(), v.norm_squared());
    let offset = PlanarPoint::new((v.y * uu - u.y * vv) / den, (u.x * vv - v.x * uu) / den);
    Ok(a + offset)
}

/// Four noncoplanar anchors, stored with a positive orientation determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetrahedronInstance {
    anchors: [SpatialPoint; 4],
    order: [usize; 4],
    volume: f64,
}

impl TetrahedronInstance {
    pub fn new(p1: SpatialPoint, p2: SpatialPoint, p3: SpatialPoint, p4: SpatialPoint) -> Result<Self> {
        let pts = [p1, p2, p3, p4];
        if !pts.iter().all(SpatialPoint::is_finite) {
            return Err(Error::NonFiniteCoordinates);
        }
        let v = signed_sextuple_volume(p1, p2, p3, p4);
        let scale = max_pairwise_distance_3d(&pts);
        if !(v.abs() > DEFAULT_COLLINEARITY_EPS * scale.powi(3)) {
            return Err(Error::DegenerateTetrahedron { volume: v, scale });
        }
        let (anchors, order) = if v > 0.0 {
            (pts, [0, 1, 2, 3])
        } else {
            ([p2, p1, p3, p4], [1, 0, 2, 3])
        };
        Ok(Self {
            anchors,
            order,
            volume: v.abs(),
        })
    }

    /// Anchors in positive orientation.
    pub fn oriented_anchors(&self) -> &[SpatialPoint; 4] {
        &self.anchors
    }

    /// Anchors in the caller's order.
    pub fn anchors(&self) -> [SpatialPoint; 4] {
        let mut out = [SpatialPoint::default(); 4];
        for (i, &caller) in self.order.iter().enumerate() {
            out[caller] = self.anchors[i];
        }
        out
    }

    pub fn order(&self) -> [usize; 4] {
        self.order
    }

    /// Six times the tetrahedron volume (positive).
    pub fn volume(&self) -> f64 {
        self.volume
    }

    fn substituted_volumes(&self, target: SpatialPoint) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (j, v) in out.iter_mut().enumerate() {
            let mut pts = self.anchors;
            pts[j] = target;
            *v = signed_sextuple_volume(pts[0], pts[1], pts[2], pts[3]);
        }
        out
    }
}

/// The 5×5 lifted determinant with the target in the first column, evaluated
/// in a frame centred on `p`.
fn lifted_determinant_3d(anchors: &[SpatialPoint; 4], p: SpatialPoint) -> f64 {
    let d = anchors.map(|a| a - p);
    determinant([
        [d[0].x, d[1].x, d[2].x, d[3].x],
        [d[0].y, d[1].y, d[2].y, d[3].y],
        [d[0].z, d[1].z, d[2].z, d[3].z],
        [d[0].norm_squared(), d[1].norm_squared(), d[2].norm_squared(), d[3].norm_squared()],
    ])
}

pub fn inverse_weights_3d(t: &TetrahedronInstance, target: SpatialPoint) -> Result<InverseSolution> {
    if !target.is_finite() {
        return Err(Error::NonFiniteCoordinates);
    }
    let sub = t.substituted_volumes(target);
    require_interior(&sub, t.volume)?;

    let raw: Vec<f64> = (0..4).map(|j| target.distance(&t.anchors[j]) * sub[j]).collect();
    let scale: f64 = raw.iter().sum();
    let mut weights = vec![0.0; 4];
    for (i, &caller) in t.order.iter().enumerate() {
        weights[caller] = raw[i] / scale;
    }
    let min_value = -lifted_determinant_3d(&t.anchors, target);
    let power = -min_value / t.volume;
    let stationarity_residual = gradient_3d(&t.anchors(), &weights, target)
        .map(|g| g.norm())
        .ok_or(Error::TargetNotInterior(vec![]))?;

    Ok(InverseSolution {
        weights,
        scale,
        min_value,
        power,
        order: t.order.to_vec(),
        stationarity_residual,
    })
}

/// Minimum value for the unnormalized 3D inverse weights: minus the 5×5
/// lifted determinant.
pub fn inverse_min_value_3d(t: &TetrahedronInstance, target: SpatialPoint) -> Result<f64> {
    require_interior(&t.substituted_volumes(target), t.volume)?;
    Ok(-lifted_determinant_3d(&t.anchors, target))
}

/// Power of `p` with respect to the circumsphere: the 5×5 lifted determinant
/// over the orientation determinant.
pub fn power_of_point_3d(t: &TetrahedronInstance, p: SpatialPoint) -> f64 {
    lifted_determinant_3d(&t.anchors, p) / t.volume
}

/// Circumcenter of a nondegenerate tetrahedron.
pub fn circumcenter_3d(t: &TetrahedronInstance) -> SpatialPoint {
    let a = t.anchors[0];
    let rows: Vec<SpatialPoint> = t.anchors[1..].iter().map(|p| *p - a).collect();
    let rhs: Vec<f64> = rows.iter().map(|r| 0.5 * r.norm_squared()).collect();
    let m = [
        [rows[0].x, rows[0].y, rows[0].z],
        [rows[1].x, rows[1].y, rows[1].z],
        [rows[2].x, rows[2].y, rows[2].z],
    ];
    let den = det3(m);
    let solve_col = |col: usize| {
        let mut mm = m;
        for (r, row) in mm.iter_mut().enumerate() {
            row[col] = rhs[r];
        }
        det3(mm) / den
    };
    a + SpatialPoint::new(solve_col(0), solve_col(1), solve_col(2))
}
