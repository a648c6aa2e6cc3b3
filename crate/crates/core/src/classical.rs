//! Equal-weight specialization: the Fermat point of a triangle.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::geometry::{det3, doubled_area, signed_doubled_area, PlanarPoint};
use crate::oracle;
use crate::solver::{
    centroid, check_noncollinear, others, relative, residual, side_lengths, vertex_solution,
    Diagnostics, Regime, Solution, TriangleInstance, WeightTriple, DEFAULT_COLLINEARITY_EPS,
};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Index of the corner whose angle is at least 2π/3, if any. The angle at
/// `P_j` is below 2π/3 exactly when `a² + b² + ab - c² > 0` for the adjacent
/// sides `a, b` and opposite side `c`.
pub fn wide_angle_vertex(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> Option<usize> {
    let anchors = [p1, p2, p3];
    (0..3).find(|&j| {
        let (k, l) = others(j);
        let a = anchors[j].distance(&anchors[k]);
        let b = anchors[j].distance(&anchors[l]);
        let c = anchors[k].distance(&anchors[l]);
        !(a * a + b * b + a * b - c * c > 0.0)
    })
}

/// Fermat point of the triangle, or the wide-angle vertex when one corner
/// reaches 2π/3.
pub fn solve_classical(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> Result<Solution> {
    check_noncollinear([p1, p2, p3], DEFAULT_COLLINEARITY_EPS)?;
    let t = TriangleInstance::new(p1, p2, p3, WeightTriple::equal())?;
    if let Some(j) = wide_angle_vertex(p1, p2, p3) {
        return Ok(vertex_solution(&t, j));
    }

    let sides = side_lengths(&t);
    let area = doubled_area(p1, p2, p3);
    let (q12, q13, q23) = (sides.r12 * sides.r12, sides.r13 * sides.r13, sides.r23 * sides.r23);
    let k = [
        0.5 * SQRT_3 * (q12 + q13 - q23) + area,
        0.5 * SQRT_3 * (q23 + q12 - q13) + area,
        0.5 * SQRT_3 * (q13 + q23 - q12) + area,
    ];
    let d = 0.5 * (q12 + q13 + q23) + SQRT_3 * area;
    let value = d.sqrt();

    let anchors = [p1, p2, p3];
    let origin = centroid(&anchors);
    let local = anchors.map(|p| p - origin);
    let prefactor = k[0] * k[1] * k[2] / (2.0 * SQRT_3 * area * d);
    let point = origin
        + (local[0] * (1.0 / k[0]) + local[1] * (1.0 / k[1]) + local[2] * (1.0 / k[2])) * prefactor;

    let mut identity_residuals = BTreeMap::new();
    identity_residuals.insert(
        residual::D_FORMS.to_string(),
        relative((k[0] + k[1] + k[2]) / SQRT_3, d),
    );
    identity_residuals.insert(residual::OBJECTIVE.to_string(), relative(t.objective(point), value));
    let stationarity_residual = oracle::stationarity_residual(&anchors, &[1.0; 3], point)?;

    Ok(Solution {
        regime: Regime::Interior,
        point,
        value,
        diagnostics: Diagnostics {
            stationarity_residual,
            identity_residuals,
        },
    })
}

/// Fermat point from the closed form whose denominator is free of the area:
///
/// ```text
/// x* = [ (x1+x2+x3)|S̃| + √3(x1 r23² + x2 r13² + x3 r12²) + 3 sgn(S̃) D_y ] / (2√3 d)
/// y* = [ (y1+y2+y3)|S̃| + √3(y1 r23² + y2 r13² + y3 r12²) - 3 sgn(S̃) D_x ] / (2√3 d)
/// ```
///
/// with `D_y = |1 1 1; y1 y2 y3; x2x3+y2y3 x1x3+y1y3 x1x2+y1y2|` and `D_x`
/// the same with the x row. Requires every angle below 2π/3.
pub fn fermat_point_area_free(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> PlanarPoint {
    // The formula is translation equivariant; evaluate it about the centroid.
    let origin = centroid(&[p1, p2, p3]);
    let [a, b, c] = [p1 - origin, p2 - origin, p3 - origin];
    let signed = signed_doubled_area(a, b, c);
    let area = signed.abs();
    let sign = signed.signum();

    let q12 = (a - b).norm_squared();
    let q13 = (a - c).norm_squared();
    let q23 = (b - c).norm_squared();
    let d = 0.5 * (q12 + q13 + q23) + SQRT_3 * area;

    let products = [b.dot(&c), a.dot(&c), a.dot(&b)];
    let d_y = det3([[1.0, 1.0, 1.0], [a.y, b.y, c.y], products]);
    let d_x = det3([[1.0, 1.0, 1.0], [a.x, b.x, c.x], products]);

    let x = (a.x + b.x + c.x) * area + SQRT_3 * (a.x * q23 + b.x * q13 + c.x * q12) + 3.0 * sign * d_y;
    let y = (a.y + b.y + c.y) * area + SQRT_3 * (a.y * q23 + b.y * q13 + c.y * q12) - 3.0 * sign * d_x;
    origin + PlanarPoint::new(x, y) * (1.0 / (2.0 * SQRT_3 * d))
}
