mod common;

use common::{interior_point, rel};
use rand::Rng;
use torricelli::inverse::{circumcenter_2d, circumcenter_3d, power_of_point_3d};
use torricelli::objective::{gradient_3d, weighted_distance_sum, weighted_distance_sum_3d};
use torricelli::{
    inverse_min_value_3d, inverse_weights_2d, inverse_weights_3d, power_of_point_2d,
    signed_doubled_area, solve, PlanarPoint, Regime, SpatialPoint, TetrahedronInstance,
    TriangleInstance, WeightTriple,
};

fn random_triangle(r: &mut rand_chacha::ChaCha8Rng) -> [PlanarPoint; 3] {
    loop {
        let a = [common::planar(r, 10.0), common::planar(r, 10.0), common::planar(r, 10.0)];
        if TriangleInstance::new(a[0], a[1], a[2], WeightTriple::equal()).is_ok() {
            return a;
        }
    }
}

#[test]
fn round_trip_recovers_target() {
    let mut r = common::rng(41);
    for _ in 0..1000 {
        let a = random_triangle(&mut r);
        let target = interior_point(&mut r, a);
        let inv = inverse_weights_2d(a, target).unwrap();
        assert!(inv.weights.iter().all(|w| *w > 0.0));
        assert!((inv.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let w = WeightTriple::new(inv.weights[0], inv.weights[1], inv.weights[2]).unwrap();
        let t = TriangleInstance::new(a[0], a[1], a[2], w).unwrap();
        let s = solve(&t).unwrap();
        assert_eq!(s.regime, Regime::Interior);
        assert!(s.point.distance(&target) < 1e-9 * t.scale(), "{:e} {:?} {:?} {:?}", s.point.distance(&target) / t.scale(), a, target, inv.weights);
    }
}

#[test]
fn value_determinant_matches_direct_evaluation_and_power() {
    let mut r = common::rng(42);
    for _ in 0..500 {
        let a = random_triangle(&mut r);
        let target = interior_point(&mut r, a);
        let inv = inverse_weights_2d(a, target).unwrap();
        let direct = weighted_distance_sum(&a, &inv.unnormalized_weights(), target);
        assert!(rel(inv.min_value, direct) < 1e-9);
        assert!(inv.power < 0.0);
        let area = signed_doubled_area(a[0], a[1], a[2]).abs();
        assert!(rel(inv.min_value, -area * inv.power) < 1e-9);

        let c = circumcenter_2d(a).unwrap();
        let h = target.distance(&c).powi(2) - a[0].distance(&c).powi(2);
        assert!((power_of_point_2d(a, target).unwrap() - h).abs() < 1e-9 * a[0].distance(&c).powi(2));
    }
}

#[test]
fn inverse_weights_are_rigid_motion_invariant() {
    let mut r = common::rng(43);
    for _ in 0..200 {
        let a = random_triangle(&mut r);
        let target = interior_point(&mut r, a);
        let angle: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let shift = common::planar(&mut r, 30.0);
        let (s, c) = angle.sin_cos();
        let map = |p: PlanarPoint| PlanarPoint::new(c * p.x - s * p.y, s * p.x + c * p.y) + shift;
        // a reflection flips orientation; weights must not care
        let mirror = |p: PlanarPoint| PlanarPoint::new(-p.x, p.y);
        let base = inverse_weights_2d(a, target).unwrap();
        for moved in [
            inverse_weights_2d(a.map(map), map(target)).unwrap(),
            inverse_weights_2d(a.map(mirror), mirror(target)).unwrap(),
        ] {
            for j in 0..3 {
                assert!((moved.weights[j] - base.weights[j]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn area_weighted_vectors_sum_to_zero() {
    let mut r = common::rng(44);
    for _ in 0..500 {
        let a = random_triangle(&mut r);
        let target = interior_point(&mut r, a);
        let areas = [
            signed_doubled_area(target, a[1], a[2]),
            signed_doubled_area(target, a[2], a[0]),
            signed_doubled_area(target, a[0], a[1]),
        ];
        let total = signed_doubled_area(a[0], a[1], a[2]);
        // sign coherence with the whole triangle
        assert!(areas.iter().all(|s| s * total > 0.0));
        let sum = (0..3).fold(PlanarPoint::default(), |acc, j| acc + (a[j] - target) * (0.5 * areas[j]));
        let scale = a[0].distance(&a[1]).max(a[0].distance(&a[2])).max(a[1].distance(&a[2]));
        assert!(sum.norm() < 1e-9 * scale * total.abs());
    }
}

fn random_tetrahedron(r: &mut rand_chacha::ChaCha8Rng) -> TetrahedronInstance {
    loop {
        let p = [
            common::spatial(r, 10.0),
            common::spatial(r, 10.0),
            common::spatial(r, 10.0),
            common::spatial(r, 10.0),
        ];
        if let Ok(t) = TetrahedronInstance::new(p[0], p[1], p[2], p[3]) {
            return t;
        }
    }
}

fn tetra_interior_point(r: &mut rand_chacha::ChaCha8Rng, t: &TetrahedronInstance) -> SpatialPoint {
    loop {
        let mut b: Vec<f64> = (0..4).map(|_| -r.gen::<f64>().ln()).collect();
        let s: f64 = b.iter().sum();
        b.iter_mut().for_each(|x| *x /= s);
        if b.iter().all(|x| *x > 1e-3) {
            let a = t.anchors();
            return (0..4).fold(SpatialPoint::default(), |acc, j| acc + a[j] * b[j]);
        }
    }
}

#[test]
fn tetrahedron_targets_are_stationary() {
    let mut r = common::rng(45);
    for _ in 0..100 {
        let t = random_tetrahedron(&mut r);
        let target = tetra_interior_point(&mut r, &t);
        let inv = inverse_weights_3d(&t, target).unwrap();
        assert!(inv.weights.iter().all(|w| *w > 0.0));
        let anchors = t.anchors();
        let m = inv.unnormalized_weights();
        let h = 1e-6 * 20.0;
        let f = |p: SpatialPoint| weighted_distance_sum_3d(&anchors, &m, p);
        let e = [SpatialPoint::new(h, 0.0, 0.0), SpatialPoint::new(0.0, h, 0.0), SpatialPoint::new(0.0, 0.0, h)];
        let fd: Vec<f64> = e.iter().map(|d| (f(target + *d) - f(target - *d)) / (2.0 * h)).collect();
        let norm = fd.iter().map(|g| g * g).sum::<f64>().sqrt();
        let weight_sum: f64 = m.iter().sum();
        assert!(norm < 1e-6 * weight_sum, "{norm:e} vs {weight_sum:e}");
        let analytic = gradient_3d(&anchors, &m, target).unwrap().norm();
        assert!(analytic < 1e-9 * weight_sum);

        let direct = f(target);
        assert!(rel(inv.min_value, direct) < 1e-9);
        assert!(rel(inverse_min_value_3d(&t, target).unwrap(), direct) < 1e-9);
        assert!(inv.power < 0.0);

        let c = circumcenter_3d(&t);
        let power = target.distance(&c).powi(2) - anchors[0].distance(&c).powi(2);
        let r2 = anchors[0].distance(&c).powi(2);
        assert!((power_of_point_3d(&t, target) - power).abs() < 1e-9 * r2);
        assert!(rel(inv.min_value, -t.volume() * power) < 1e-9);
    }
}

#[test]
fn unit_tetrahedron_gradient_vanishes() {
    let t = TetrahedronInstance::new(
        SpatialPoint::new(0.0, 0.0, 0.0),
        SpatialPoint::new(1.0, 0.0, 0.0),
        SpatialPoint::new(0.0, 1.0, 0.0),
        SpatialPoint::new(0.0, 0.0, 1.0),
    )
    .unwrap();
    let target = SpatialPoint::new(0.25, 0.25, 0.25);
    let inv = inverse_weights_3d(&t, target).unwrap();
    let m = inv.unnormalized_weights();
    let anchors = t.anchors();
    let h = 1e-6;
    let f = |p: SpatialPoint| weighted_distance_sum_3d(&anchors, &m, p);
    let mut sq = 0.0;
    for d in [SpatialPoint::new(h, 0.0, 0.0), SpatialPoint::new(0.0, h, 0.0), SpatialPoint::new(0.0, 0.0, h)] {
        let g = (f(target + d) - f(target - d)) / (2.0 * h);
        sq += g * g;
    }
    assert!(sq.sqrt() < 1e-9, "{}", sq.sqrt());
    assert!(inv.stationarity_residual < 1e-12);
}

#[test]
fn circumcenter_target_value_relation() {
    // acute triangle: the circumcenter is interior and h = -R²
    let a = [PlanarPoint::new(0.0, 0.0), PlanarPoint::new(4.0, 0.0), PlanarPoint::new(1.5, 3.0)];
    let c = circumcenter_2d(a).unwrap();
    let inv = inverse_weights_2d(a, c).unwrap();
    let r2 = c.distance(&a[0]).powi(2);
    assert!((inv.power + r2).abs() < 1e-12 * r2);

    let t = TetrahedronInstance::new(
        SpatialPoint::new(1.0, 1.0, 1.0),
        SpatialPoint::new(1.0, -1.0, -1.0),
        SpatialPoint::new(-1.0, 1.0, -1.0),
        SpatialPoint::new(-1.0, -1.0, 1.0),
    )
    .unwrap();
    let c = circumcenter_3d(&t);
    let value = inverse_min_value_3d(&t, c).unwrap();
    // value = -V·h with h = -R² = -3
    assert!(rel(value, t.volume() * 3.0) < 1e-14);
}
