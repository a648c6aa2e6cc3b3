//! Closed-form solution of the weighted three-point problem
//!
//! ```text
//! minimize F(P) = m1·|P P1| + m2·|P P2| + m3·|P P3|
//! ```
//!
//! The solver first decides the regime. When one weight dominates (the pull of
//! the other two anchors on some vertex does not exceed its own weight) the
//! minimum sits on that vertex. Otherwise the minimizer is the unique interior
//! stationary point, given by
//!
//! ```text
//! P* = K1 K2 K3 / (4 S σ d) · (P1/K1 + P2/K2 + P3/K3),   min F = √d
//! ```
//!
//! where `S` is the doubled anchor-triangle area, `σ` the doubled area of the
//! triangle with side lengths `m1, m2, m3` and `K_j` mixes the two.
//! Every interior solution carries a set of algebraic identity residuals that
//! must vanish in exact arithmetic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{doubled_area, max_pairwise_distance_2d, PlanarPoint};
use crate::objective::{anchor_pull, weighted_distance_sum};
use crate::oracle;

/// Default relative tolerance applied to every diagnostic residual.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default scale-relative collinearity threshold: reject when `S <= eps·L²`.
pub const DEFAULT_COLLINEARITY_EPS: f64 = 1e-12;

/// Names of the identity residuals recorded for interior solutions.
pub mod residual {
    /// Distance from the optimum to each anchor versus `m_j K_j / (2σ√d)`.
    pub const ANCHOR_DISTANCE: &str = "anchor_distance";
    /// `K1K2 + K1K3 + K2K3 = 4σSd`.
    pub const K_PAIR_SUM: &str = "k_pair_sum";
    /// `r23²K1 + r13²K2 + r12²K3 = 2Sd`.
    pub const K_SIDE_SUM: &str = "k_side_sum";
    /// The weighted `d = (m1²K1 + m2²K2 + m3²K3)/(2σ)` versus the σ-free form.
    pub const D_FORMS: &str = "d_forms";
    /// Minimum value of the dual instance (weights and side lengths swapped).
    pub const DUAL_VALUE: &str = "dual_value";
    /// Product form of the point versus the harmonic `1/K_j` average.
    pub const HARMONIC_POINT: &str = "harmonic_point";
    /// Direct evaluation of the objective at the reported point versus the value.
    pub const OBJECTIVE: &str = "objective";
}

/// Three strictly positive weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct WeightTriple([f64; 3]);

impl WeightTriple {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        let w = [m1, m2, m3];
        if w.iter().all(|m| m.is_finite() && *m > 0.0) {
            Ok(Self(w))
        } else {
            Err(Error::InvalidWeights(w.to_vec()))
        }
    }

    pub const fn equal() -> Self {
        Self([1.0, 1.0, 1.0])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn get(&self, j: usize) -> f64 {
        self.0[j]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.0[0] * factor, self.0[1] * factor, self.0[2] * factor)
    }
}

impl TryFrom<[f64; 3]> for WeightTriple {
    type Error = Error;
    fn try_from(w: [f64; 3]) -> Result<Self> {
        Self::new(w[0], w[1], w[2])
    }
}

impl From<WeightTriple> for [f64; 3] {
    fn from(w: WeightTriple) -> Self {
        w.0
    }
}

/// Three noncollinear anchors with their weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleInstance {
    anchors: [PlanarPoint; 3],
    weights: WeightTriple,
}

impl TriangleInstance {
    pub fn new(
        p1: PlanarPoint,
        p2: PlanarPoint,
        p3: PlanarPoint,
        weights: WeightTriple,
    ) -> Result<Self> {
        Self::with_collinearity_eps(p1, p2, p3, weights, DEFAULT_COLLINEARITY_EPS)
    }

    pub fn with_collinearity_eps(
        p1: PlanarPoint,
        p2: PlanarPoint,
        p3: PlanarPoint,
        weights: WeightTriple,
        eps: f64,
    ) -> Result<Self> {
        check_noncollinear([p1, p2, p3], eps)?;
        Ok(Self {
            anchors: [p1, p2, p3],
            weights,
        })
    }

    pub fn anchors(&self) -> &[PlanarPoint; 3] {
        &self.anchors
    }

    pub fn weights(&self) -> &WeightTriple {
        &self.weights
    }

    /// Largest side length.
    pub fn scale(&self) -> f64 {
        max_pairwise_distance_2d(&self.anchors)
    }

    pub fn objective(&self, p: PlanarPoint) -> f64 {
        weighted_distance_sum(&self.anchors, &self.weights.0, p)
    }

    /// Cost of placing the facility on anchor `j`.
    pub fn vertex_value(&self, j: usize) -> f64 {
        self.objective(self.anchors[j])
    }
}

/// Validates finiteness and the scale-relative collinearity threshold.
pub(crate) fn check_noncollinear(anchors: [PlanarPoint; 3], eps: f64) -> Result<()> {
    if !anchors.iter().all(PlanarPoint::is_finite) {
        return Err(Error::NonFiniteCoordinates);
    }
    let area = doubled_area(anchors[0], anchors[1], anchors[2]);
    let scale = max_pairwise_distance_2d(&anchors);
    if !(area > eps * scale * scale) {
        return Err(Error::CollinearAnchors { area, scale });
    }
    Ok(())
}

/// Pairwise anchor distances `r_jl = |P_j P_l|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideLengths {
    pub r12: f64,
    pub r13: f64,
    pub r23: f64,
}

impl SideLengths {
    /// Distance between anchors `j` and `l` (0-based).
    pub fn between(&self, j: usize, l: usize) -> f64 {
        match (j.min(l), j.max(l)) {
            (0, 1) => self.r12,
            (0, 2) => self.r13,
            (1, 2) => self.r23,
            _ => 0.0,
        }
    }

    /// Cosine of the corner angle at anchor `j`, from the law of cosines.
    pub fn cos_angle(&self, j: usize) -> f64 {
        let (k, l) = others(j);
        let a = self.between(j, k);
        let b = self.between(j, l);
        let c = self.between(k, l);
        (a * a + b * b - c * c) / (2.0 * a * b)
    }
}

pub fn side_lengths(t: &TriangleInstance) -> SideLengths {
    let [p1, p2, p3] = t.anchors;
    SideLengths {
        r12: p1.distance(&p2),
        r13: p1.distance(&p3),
        r23: p2.distance(&p3),
    }
}

pub(crate) fn others(j: usize) -> (usize, usize) {
    match j {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Doubled area of the triangle whose sides are the three weights.
///
/// Zero for weights on the edge of their own triangle inequality. A radicand
/// that is negative beyond rounding means the weights cannot form a triangle,
/// which never happens in the interior regime.
pub fn weight_sigma(w: &WeightTriple) -> Result<f64> {
    let [a, b, c] = w.0;
    // Heron product; same polynomial as -a⁴-b⁴-c⁴+2a²b²+2a²c²+2b²c² with less cancellation.
    let radicand = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    let sum = a + b + c;
    if radicand < -DEFAULT_TOLERANCE * sum.powi(4) {
        return Err(Error::NonTriangularWeights(w.0));
    }
    Ok(0.5 * radicand.max(0.0).sqrt())
}

/// Returns the vertex that minimizes the objective, or `None` when all three
/// strict existence conditions hold and the optimum is interior.
///
/// Condition `j` fails when `m_j² >= m_k² + m_l² + 2 m_k m_l cos α_j`; equality
/// counts as failure. Valid input can fail at most one condition.
pub fn vertex_test(t: &TriangleInstance) -> Result<Option<usize>> {
    let sides = side_lengths(t);
    let m = t.weights.0;
    let failing: Vec<usize> = (0..3)
        .filter(|&j| {
            let (k, l) = others(j);
            let bound = m[k] * m[k] + m[l] * m[l] + 2.0 * m[k] * m[l] * sides.cos_angle(j);
            m[j] * m[j] >= bound
        })
        .collect();
    match failing.as_slice() {
        [] => Ok(None),
        [j] => Ok(Some(*j)),
        many => Err(Error::InternalInconsistency(format!(
            "existence conditions fail at several vertices {many:?}"
        ))),
    }
}

/// The mixed coefficients
///
/// ```text
/// K1 = (r12² + r13² - r23²)·σ + (m2² + m3² - m1²)·S
/// ```
///
/// and cyclic. Positive throughout the interior regime.
pub fn k_coefficients(t: &TriangleInstance, sigma: f64, area: f64) -> Result<[f64; 3]> {
    let sides = side_lengths(t);
    let m = t.weights.0;
    let mut k = [0.0; 3];
    for (j, kj) in k.iter_mut().enumerate() {
        let (a, b) = others(j);
        let rja = sides.between(j, a);
        let rjb = sides.between(j, b);
        let rab = sides.between(a, b);
        *kj = (rja * rja + rjb * rjb - rab * rab) * sigma
            + (m[a] * m[a] + m[b] * m[b] - m[j] * m[j]) * area;
    }
    if let Some(j) = k.iter().position(|&kj| !(kj > 0.0)) {
        return Err(Error::InternalInconsistency(format!(
            "coefficient K{} = {:e} is not positive in the interior regime",
            j + 1,
            k[j]
        )));
    }
    Ok(k)
}

/// Square of the minimum value, σ-division-free form
///
/// ```text
/// d = 2Sσ + ½[m1²(r12² + r13² - r23²) + m2²(r23² + r12² - r13²) + m3²(r13² + r23² - r12²)]
/// ```
pub fn minimum_d(t: &TriangleInstance, sigma: f64, area: f64) -> f64 {
    let sides = side_lengths(t);
    let m = t.weights.0;
    let mixed: f64 = (0..3)
        .map(|j| {
            let (a, b) = others(j);
            let rja = sides.between(j, a);
            let rjb = sides.between(j, b);
            let rab = sides.between(a, b);
            m[j] * m[j] * (rja * rja + rjb * rjb - rab * rab)
        })
        .sum();
    2.0 * area * sigma + 0.5 * mixed
}

/// `d = (m1²K1 + m2²K2 + m3²K3) / (2σ)`; divides by σ, so diagnostic only.
pub fn minimum_d_weighted(w: &WeightTriple, sigma: f64, k: &[f64; 3]) -> f64 {
    let m = w.0;
    (m[0] * m[0] * k[0] + m[1] * m[1] * k[1] + m[2] * m[2] * k[2]) / (2.0 * sigma)
}

/// `d` of the dual instance, where side lengths act as weights on a triangle
/// with sides `m1, m2, m3`.
pub fn minimum_d_dual(t: &TriangleInstance, sigma: f64, area: f64) -> f64 {
    let s = side_lengths(t);
    let [m1, m2, m3] = t.weights.0;
    let (m1, m2, m3) = (m1 * m1, m2 * m2, m3 * m3);
    2.0 * area * sigma
        + 0.5
            * (s.r12 * s.r12 * (m1 + m2 - m3)
                + s.r13 * s.r13 * (m1 + m3 - m2)
                + s.r23 * s.r23 * (m2 + m3 - m1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Interior,
    /// The minimizer is the anchor with this 0-based index.
    Vertex(usize),
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Interior => f.write_str("interior"),
            Regime::Vertex(j) => write!(f, "vertex-{}", j + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Interior: norm of the objective gradient at the point. Vertex: how far
    /// the pull of the other anchors exceeds the vertex weight (zero when the
    /// vertex is optimal).
    pub stationarity_residual: f64,
    /// Relative residuals of the closed-form identities, by name.
    pub identity_residuals: BTreeMap<String, f64>,
}

impl Diagnostics {
    /// Largest identity residual, with its name.
    pub fn worst_identity(&self) -> Option<(&str, f64)> {
        self.identity_residuals
            .iter()
            .map(|(k, v)| (k.as_str(), *v))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Fails when any residual is non-finite or above tolerance. The
    /// stationarity residual is compared against `tol · weight_sum`.
    pub fn check(&self, tol: f64, weight_sum: f64) -> Result<()> {
        if !(self.stationarity_residual <= tol * weight_sum) {
            return Err(Error::InternalInconsistency(format!(
                "stationarity residual {:e} exceeds {:e}",
                self.stationarity_residual,
                tol * weight_sum
            )));
        }
        for (name, value) in &self.identity_residuals {
            if !(*value <= tol) {
                return Err(Error::InternalInconsistency(format!(
                    "identity residual {name} = {value:e} exceeds {tol:e}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub regime: Regime,
    pub point: PlanarPoint,
    pub value: f64,
    pub diagnostics: Diagnostics,
}

/// Solver with configurable tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solver {
    pub tolerance: f64,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl Solver {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self { tolerance }
    }

    /// Solves the instance and verifies every diagnostic against the tolerance.
    pub fn solve(&self, t: &TriangleInstance) -> Result<Solution> {
        let solution = solve_unchecked(t)?;
        solution
            .diagnostics
            .check(self.tolerance, t.weights.sum())?;
        Ok(solution)
    }
}

/// Solves with the default tolerance.
pub fn solve(t: &TriangleInstance) -> Result<Solution> {
    Solver::default().solve(t)
}

/// Solves and populates diagnostics without judging them.
pub fn solve_unchecked(t: &TriangleInstance) -> Result<Solution> {
    if let Some(j) = vertex_test(t)? {
        return Ok(vertex_solution(t, j));
    }

    let area = doubled_area(t.anchors[0], t.anchors[1], t.anchors[2]);
    let sigma = weight_sigma(&t.weights)?;
    let k = k_coefficients(t, sigma, area)?;
    let d = minimum_d(t, sigma, area);
    let value = d.sqrt();

    // Work relative to the anchor centroid; the prefactor times Σ1/K_j is one,
    // so the translation cancels exactly in exact arithmetic.
    let origin = centroid(&t.anchors);
    let local: [PlanarPoint; 3] = t.anchors.map(|p| p - origin);
    let prefactor = k[0] * k[1] * k[2] / (4.0 * area * sigma * d);
    let weighted = local[0] * (1.0 / k[0]) + local[1] * (1.0 / k[1]) + local[2] * (1.0 / k[2]);
    let point = origin + weighted * prefactor;

    let diagnostics = interior_diagnostics(t, point, value, sigma, area, d, &k)?;
    Ok(Solution {
        regime: Regime::Interior,
        point,
        value,
        diagnostics,
    })
}

pub(crate) fn centroid(points: &[PlanarPoint; 3]) -> PlanarPoint {
    (points[0] + points[1] + points[2]) * (1.0 / 3.0)
}

pub(crate) fn vertex_solution(t: &TriangleInstance, j: usize) -> Solution {
    let point = t.anchors[j];
    let sides = side_lengths(t);
    let (a, b) = others(j);
    let m = t.weights.0;
    let value = m[a] * sides.between(j, a) + m[b] * sides.between(j, b);
    let excess = (anchor_pull(&t.anchors, &m, j) - m[j]).max(0.0);
    let mut identity_residuals = BTreeMap::new();
    identity_residuals.insert(
        residual::OBJECTIVE.to_string(),
        relative(t.objective(point), value),
    );
    Solution {
        regime: Regime::Vertex(j),
        point,
        value,
        diagnostics: Diagnostics {
            stationarity_residual: excess,
            identity_residuals,
        },
    }
}

fn interior_diagnostics(
    t: &TriangleInstance,
    point: PlanarPoint,
    value: f64,
    sigma: f64,
    area: f64,
    d: f64,
    k: &[f64; 3],
) -> Result<Diagnostics> {
    let sides = side_lengths(t);
    let m = t.weights.0;
    let scale = t.scale();

    let anchor_distance = (0..3)
        .map(|j| {
            let predicted = m[j] * k[j] / (2.0 * sigma * value);
            (point.distance(&t.anchors[j]) - predicted).abs() / scale
        })
        .fold(0.0, f64::max);
    let pair_sum = k[0] * k[1] + k[0] * k[2] + k[1] * k[2];
    let side_sum = sides.r23 * sides.r23 * k[0] + sides.r13 * sides.r13 * k[1] + sides.r12 * sides.r12 * k[2];
    let inv_sum = 1.0 / k[0] + 1.0 / k[1] + 1.0 / k[2];
    let harmonic = (t.anchors[0] * (1.0 / k[0]) + t.anchors[1] * (1.0 / k[1]) + t.anchors[2] * (1.0 / k[2]))
        * (1.0 / inv_sum);

    let mut r = BTreeMap::new();
    r.insert(residual::ANCHOR_DISTANCE.to_string(), anchor_distance);
    r.insert(residual::K_PAIR_SUM.to_string(), relative(pair_sum, 4.0 * sigma * area * d));
    r.insert(residual::K_SIDE_SUM.to_string(), relative(side_sum, 2.0 * area * d));
    r.insert(residual::D_FORMS.to_string(), relative(minimum_d_weighted(&t.weights, sigma, k), d));
    r.insert(residual::DUAL_VALUE.to_string(), relative(minimum_d_dual(t, sigma, area), d));
    r.insert(residual::HARMONIC_POINT.to_string(), harmonic.distance(&point) / scale);
    r.insert(residual::OBJECTIVE.to_string(), relative(t.objective(point), value));

    let stationarity_residual = oracle::stationarity_residual(&t.anchors, &m, point)?;
    Ok(Diagnostics {
        stationarity_residual,
        identity_residuals: r,
    })
}

pub(crate) fn relative(actual: f64, expected: f64) -> f64 {
    let denom = expected.abs().max(actual.abs());
    if denom == 0.0 {
        0.0
    } else {
        (actual - expected).abs() / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> PlanarPoint {
        PlanarPoint::new(x, y)
    }

    fn instance(anchors: [(f64, f64); 3], w: [f64; 3]) -> TriangleInstance {
        TriangleInstance::new(
            p(anchors[0].0, anchors[0].1),
            p(anchors[1].0, anchors[1].1),
            p(anchors[2].0, anchors[2].1),
            WeightTriple::new(w[0], w[1], w[2]).unwrap(),
        )
        .unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    #[test]
    fn side_lengths_examples() {
        let s = side_lengths(&instance([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [1.0; 3]));
        assert_eq!((s.r12, s.r13), (1.0, 1.0));
        assert!(close(s.r23, 2f64.sqrt(), 1e-15));

        let s = side_lengths(&instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [1.0; 3]));
        assert!(close(s.r12, 26f64.sqrt(), 1e-15));
        assert!(close(s.r13, 34f64.sqrt(), 1e-15));
        assert_eq!(s.r23, 4.0);

        let r2 = 2f64.sqrt();
        let s = side_lengths(&instance([(0.0, 0.0), (2.0, 0.0), (-r2, r2)], [1.0; 3]));
        assert!(close(s.r12, 2.0, 1e-15));
        assert!(close(s.r13, 2.0, 1e-14));
        assert!(close(s.r23, (8.0 + 4.0 * r2).sqrt(), 1e-14));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(weight_sigma(&WeightTriple::new(3.0, 4.0, 5.0).unwrap()).unwrap(), 12.0);
        assert_eq!(weight_sigma(&WeightTriple::new(1.0, 1.0, 2.0).unwrap()).unwrap(), 0.0);
        let s = weight_sigma(&WeightTriple::equal()).unwrap();
        assert!(close(s, 3f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn sigma_matches_expanded_quartic() {
        for w in [[3.0f64, 4.0, 5.0], [1.2, 0.7, 0.9], [2.0, 2.0, 3.5]] {
            let [a, b, c] = w;
            let quartic = -a.powi(4) - b.powi(4) - c.powi(4)
                + 2.0 * a * a * b * b
                + 2.0 * a * a * c * c
                + 2.0 * b * b * c * c;
            let s = weight_sigma(&WeightTriple::new(a, b, c).unwrap()).unwrap();
            assert!(close(s, 0.5 * quartic.sqrt(), 1e-14));
        }
    }

    #[test]
    fn sigma_rejects_non_triangular_weights() {
        let err = weight_sigma(&WeightTriple::new(1.0, 1.0, 3.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonTriangularWeights(_)));
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(WeightTriple::new(1.0, 0.0, 1.0).is_err());
        assert!(WeightTriple::new(1.0, -2.0, 1.0).is_err());
        assert!(WeightTriple::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(WeightTriple::new(f64::INFINITY, 1.0, 1.0).is_err());
    }

    #[test]
    fn collinear_anchors_rejected() {
        let err = TriangleInstance::new(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0), WeightTriple::equal())
            .unwrap_err();
        assert!(matches!(err, Error::CollinearAnchors { .. }));
        // Nearly collinear below the relative threshold.
        let err = TriangleInstance::new(p(0.0, 0.0), p(1.0, 1e-13), p(2.0, 0.0), WeightTriple::equal())
            .unwrap_err();
        assert!(matches!(err, Error::CollinearAnchors { .. }));
        assert!(TriangleInstance::new(p(0.0, 0.0), p(1.0, 1e-9), p(2.0, 0.0), WeightTriple::equal()).is_ok());
        let err = TriangleInstance::new(p(0.0, f64::NAN), p(1.0, 0.0), p(0.0, 1.0), WeightTriple::equal())
            .unwrap_err();
        assert_eq!(err, Error::NonFiniteCoordinates);
    }

    #[test]
    fn vertex_test_examples() {
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [10.0, 1.0, 1.0]);
        assert_eq!(vertex_test(&t).unwrap(), Some(0));
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [3.0, 5.0, 4.0]);
        assert_eq!(vertex_test(&t).unwrap(), None);
        let h = 3f64.sqrt() / 2.0;
        let t = instance([(0.0, 0.0), (1.0, 0.0), (0.5, h)], [1.0; 3]);
        assert_eq!(vertex_test(&t).unwrap(), None);
    }

    #[test]
    fn vertex_test_boundary_counts_as_vertex() {
        // Right angle at the first anchor: the bound for m1 is m2² + m3².
        let t = instance([(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)], [5.0, 3.0, 4.0]);
        assert_eq!(vertex_test(&t).unwrap(), Some(0));
    }

    #[test]
    fn equilateral_k_coefficients_are_equal() {
        let h = 3f64.sqrt() / 2.0;
        let t = instance([(0.0, 0.0), (1.0, 0.0), (0.5, h)], [1.0; 3]);
        let sigma = weight_sigma(t.weights()).unwrap();
        let k = k_coefficients(&t, sigma, 2.0 * h * 0.5).unwrap();
        assert!(close(k[0], k[1], 1e-14) && close(k[1], k[2], 1e-14));
        // K = σ·1 + 1·S = √3/2 + √3/2
        assert!(close(k[0], 3f64.sqrt(), 1e-14));
    }

    #[test]
    fn k_coefficients_cotangent_form() {
        // K_j = 2σS(cot α_j + cot β_j), β_j the angle of the weight triangle opposite m_j.
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [3.0, 5.0, 4.0]);
        let sigma = weight_sigma(t.weights()).unwrap();
        let area = 20.0;
        let k = k_coefficients(&t, sigma, area).unwrap();
        let sides = side_lengths(&t);
        let m = t.weights().as_array();
        for j in 0..3 {
            let (a, b) = others(j);
            let cos_alpha = sides.cos_angle(j);
            let sin_alpha = area / (sides.between(j, a) * sides.between(j, b));
            let cos_beta = (m[a] * m[a] + m[b] * m[b] - m[j] * m[j]) / (2.0 * m[a] * m[b]);
            let sin_beta = sigma / (m[a] * m[b]);
            let cot = cos_alpha / sin_alpha + cos_beta / sin_beta;
            assert!(close(k[j], 2.0 * sigma * area * cot, 1e-12), "K{} = {} vs {}", j + 1, k[j], 2.0 * sigma * area * cot);
        }
    }

    #[test]
    fn solve_interior_fixture() {
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [3.0, 5.0, 4.0]);
        let s = solve(&t).unwrap();
        assert_eq!(s.regime, Regime::Interior);
        assert!(close(s.point.x, 751.0 / 485.0, 1e-13));
        assert!(close(s.point.y, 647.0 / 485.0, 1e-13));
        assert!(close(s.value, 970f64.sqrt(), 1e-13));
    }

    #[test]
    fn solve_vertex_regime() {
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [10.0, 1.0, 1.0]);
        let s = solve(&t).unwrap();
        assert_eq!(s.regime, Regime::Vertex(0));
        assert_eq!(s.point, p(2.0, 6.0));
        assert!(close(s.value, 26f64.sqrt() + 34f64.sqrt(), 1e-15));
        assert_eq!(s.diagnostics.stationarity_residual, 0.0);
        // local perturbation never improves the vertex
        for i in 0..16 {
            let a = i as f64 * std::f64::consts::TAU / 16.0;
            let q = s.point + p(a.cos(), a.sin()) * 1e-4;
            assert!(t.objective(q) >= s.value);
        }
    }

    #[test]
    fn regime_display() {
        assert_eq!(Regime::Interior.to_string(), "interior");
        assert_eq!(Regime::Vertex(2).to_string(), "vertex-3");
    }

    #[test]
    fn tolerance_is_enforced() {
        let t = instance([(2.0, 6.0), (1.0, 1.0), (5.0, 1.0)], [3.0, 5.0, 4.0]);
        let err = Solver::with_tolerance(0.0).solve(&t);
        // Exact agreement is not expected in floating point, but a zero
        // tolerance must either pass honestly or report the offending residual.
        if let Err(e) = err {
            assert!(matches!(e, Error::InternalInconsistency(_)));
        }
        assert!(Solver::with_tolerance(1e-9).solve(&t).is_ok());
    }
}
