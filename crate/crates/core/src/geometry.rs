//! Points, distances and the small determinants the closed forms are built from.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y
    }
}

impl Add for PlanarPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PlanarPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for PlanarPoint {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl From<[f64; 2]> for PlanarPoint {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<PlanarPoint> for [f64; 2] {
    fn from(p: PlanarPoint) -> Self {
        [p.x, p.y]
    }
}

/// A point in three-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpatialPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpatialPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn norm_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for SpatialPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for SpatialPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for SpatialPoint {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl From<[f64; 3]> for SpatialPoint {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Self::new(x, y, z)
    }
}

impl From<SpatialPoint> for [f64; 3] {
    fn from(p: SpatialPoint) -> Self {
        [p.x, p.y, p.z]
    }
}

/// Signed orientation determinant
///
/// ```text
/// | 1  1  1  |
/// | x1 x2 x3 |
/// | y1 y2 y3 |
/// ```
///
/// Positive when the points are counted counterclockwise. The six products are
/// formed exactly and summed in doubled precision, so the result is accurate
/// to a few ulps even for nearly degenerate triangles.
pub fn signed_doubled_area(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> f64 {
    let terms = [
        two_product(p1.x, p2.y),
        two_product(-p1.y, p2.x),
        two_product(p2.x, p3.y),
        two_product(-p2.y, p3.x),
        two_product(p3.x, p1.y),
        two_product(-p3.y, p1.x),
    ];
    cascaded_sum(terms.iter().flat_map(|(hi, lo)| [*hi, *lo]))
}

/// `a * b` as an unevaluated sum `hi + lo`, exact.
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    (hi, a.mul_add(b, -hi))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Summation with the rounding errors carried in a second accumulator.
fn cascaded_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0, 0.0);
    for v in values {
        let (s, e) = two_sum(sum, v);
        sum = s;
        carry += e;
    }
    sum + carry
}

/// Doubled area of the triangle: the absolute value of [`signed_doubled_area`].
pub fn doubled_area(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> f64 {
    signed_doubled_area(p1, p2, p3).abs()
}

/// Signed orientation determinant of four points in space (six times the signed
/// tetrahedron volume).
pub fn signed_sextuple_volume(
    p1: SpatialPoint,
    p2: SpatialPoint,
    p3: SpatialPoint,
    p4: SpatialPoint,
) -> f64 {
    let a = p2 - p1;
    let b = p3 - p1;
    let c = p4 - p1;
    // |1 1 1 1; x; y; z| expands to det[a b c] with the columns as edge vectors.
    det3([[a.x, b.x, c.x], [a.y, b.y, c.y], [a.z, b.z, c.z]])
}

pub(crate) fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of a small dense square matrix by Gaussian elimination with
/// partial pivoting.
pub fn determinant<const N: usize>(mut m: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..N {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                for k in col..N {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    det
}

/// Largest pairwise distance among the points.
pub fn max_pairwise_distance_2d(points: &[PlanarPoint]) -> f64 {
    let mut best = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(a.distance(b));
        }
    }
    best
}

pub fn max_pairwise_distance_3d(points: &[SpatialPoint]) -> f64 {
    let mut best = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(a.distance(b));
        }
    }
    best
}

/// Barycentric coordinates of `p` with respect to the triangle, normalized to
/// unit sum. `None` for a degenerate triangle.
pub fn barycentric(
    p1: PlanarPoint,
    p2: PlanarPoint,
    p3: PlanarPoint,
    p: PlanarPoint,
) -> Option<[f64; 3]> {
    let total = signed_doubled_area(p1, p2, p3);
    if total == 0.0 {
        return None;
    }
    Some([
        signed_doubled_area(p, p2, p3) / total,
        signed_doubled_area(p1, p, p3) / total,
        signed_doubled_area(p1, p2, p) / total,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_area_examples() {
        let o = PlanarPoint::new(0.0, 0.0);
        assert_eq!(
            doubled_area(o, PlanarPoint::new(1.0, 0.0), PlanarPoint::new(0.0, 1.0)),
            1.0
        );
        assert_eq!(
            doubled_area(o, PlanarPoint::new(1.0, 1.0), PlanarPoint::new(2.0, 2.0)),
            0.0
        );
        let s = doubled_area(
            PlanarPoint::new(2.0, 6.0),
            PlanarPoint::new(1.0, 1.0),
            PlanarPoint::new(5.0, 1.0),
        );
        assert_eq!(s, 20.0);
    }

    #[test]
    fn signed_area_flips_with_orientation() {
        let a = PlanarPoint::new(0.0, 0.0);
        let b = PlanarPoint::new(1.0, 0.0);
        let c = PlanarPoint::new(0.0, 1.0);
        assert_eq!(signed_doubled_area(a, b, c), 1.0);
        assert_eq!(signed_doubled_area(a, c, b), -1.0);
    }

    #[test]
    fn orientation_survives_near_degeneracy() {
        // Points on the line y = x offset by one ulp-scale step.
        let a = PlanarPoint::new(0.1, 0.1);
        let b = PlanarPoint::new(0.7, 0.7);
        let c = PlanarPoint::new(12.3, 12.3 + 1e-12);
        let exact = {
            // (b - a) × (c - a) with the inputs taken as exact binary values
            let (ux, uy) = (0.7f64 - 0.1, 0.7f64 - 0.1);
            let (vx, vy) = (12.3f64 - 0.1, (12.3 + 1e-12) - 0.1);
            ux * vy - uy * vx
        };
        let s = signed_doubled_area(a, b, c);
        assert!(s > 0.0);
        assert!((s - exact).abs() < 1e-13, "{s:e} {exact:e}");
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = [[2.0, -1.0, 0.5], [1.0, 3.0, 2.0], [-4.0, 0.25, 1.0]];
        assert!((determinant(m) - det3(m)).abs() < 1e-12);
        let id4 = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 3.0, 0.0],
            [0.0, 0.0, 0.0, 4.0],
        ];
        assert_eq!(determinant(id4), 24.0);
        let swapped = [[0.0, 1.0], [1.0, 0.0]];
        assert_eq!(determinant(swapped), -1.0);
    }

    #[test]
    fn unit_tetrahedron_volume() {
        let v = signed_sextuple_volume(
            SpatialPoint::new(0.0, 0.0, 0.0),
            SpatialPoint::new(1.0, 0.0, 0.0),
            SpatialPoint::new(0.0, 1.0, 0.0),
            SpatialPoint::new(0.0, 0.0, 1.0),
        );
        assert_eq!(v, 1.0);
    }

    #[test]
    fn barycentric_of_centroid() {
        let b = barycentric(
            PlanarPoint::new(0.0, 0.0),
            PlanarPoint::new(3.0, 0.0),
            PlanarPoint::new(0.0, 3.0),
            PlanarPoint::new(1.0, 1.0),
        )
        .unwrap();
        for c in b {
            assert!((c - 1.0 / 3.0).abs() < 1e-15);
        }
    }
}
