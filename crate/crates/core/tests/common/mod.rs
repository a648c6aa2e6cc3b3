#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torricelli::{vertex_test, PlanarPoint, SpatialPoint, TriangleInstance, WeightTriple};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn planar(rng: &mut ChaCha8Rng, half_width: f64) -> PlanarPoint {
    PlanarPoint::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn spatial(rng: &mut ChaCha8Rng, half_width: f64) -> SpatialPoint {
    SpatialPoint::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn weights(rng: &mut ChaCha8Rng) -> WeightTriple {
    WeightTriple::new(
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.5..2.0),
    )
    .unwrap()
}

/// Random valid instance: anchors uniform in [-10, 10]², weights uniform in [0.5, 2].
pub fn instance(rng: &mut ChaCha8Rng) -> TriangleInstance {
    loop {
        let a = [planar(rng, 10.0), planar(rng, 10.0), planar(rng, 10.0)];
        if let Ok(t) = TriangleInstance::new(a[0], a[1], a[2], weights(rng)) {
            return t;
        }
    }
}

pub fn interior_instances(seed: u64, count: usize) -> Vec<TriangleInstance> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = instance(&mut r);
        if vertex_test(&t).unwrap().is_none() {
            out.push(t);
        }
    }
    out
}

pub fn vertex_instances(seed: u64, count: usize) -> Vec<(TriangleInstance, usize)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = instance(&mut r);
        if let Some(j) = vertex_test(&t).unwrap() {
            out.push((t, j));
        }
    }
    out
}

/// Uniform point strictly inside the triangle, bounded away from the sides.
pub fn interior_point(rng: &mut ChaCha8Rng, a: [PlanarPoint; 3]) -> PlanarPoint {
    loop {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let w = 1.0 - u - v;
        if u.min(v).min(w) > 1e-3 {
            return a[0] * w + a[1] * u + a[2] * v;
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
