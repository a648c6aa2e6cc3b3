//! Regression fixtures with exact expected values, shipped in the binary.
//!
//! Expected numbers are evaluated from closed radical expressions, not copied
//! from rounded decimals. The printed four-decimal values are checked too, at
//! their own precision.

use std::fmt::Write as _;

use crate::instance::{Instance, Options, ProblemKind};
use crate::pipeline::{process, Settings};
use crate::record::Status;

/// Relative tolerance against the exact expressions.
pub const EXACT_TOLERANCE: f64 = 1e-12;
/// Four printed decimals, possibly truncated rather than rounded.
pub const PRINTED_TOLERANCE: f64 = 1e-4;
/// Inverse weight ratios.
pub const RATIO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Forward {
        point: [f64; 2],
        value: f64,
        printed_point: [f64; 2],
        printed_value: Option<f64>,
    },
    Inverse {
        /// Normalized weights.
        weights: [f64; 3],
        /// Minimum value in the unnormalized weight scale.
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub instance: Instance,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    /// |p − e| / |e| for points, or the largest weight deviation for inverse fixtures.
    pub point_error: f64,
    /// Largest per-coordinate relative error.
    pub coordinate_error: f64,
    pub value_error: f64,
    pub printed_error: f64,
    pub message: String,
}

fn direct(name: &'static str, anchors: [[f64; 2]; 3], weights: [f64; 3], expected: Expected) -> Fixture {
    Fixture {
        name,
        instance: Instance::direct(anchors, weights).named(name),
        expected,
    }
}

fn classical(name: &'static str, anchors: [[f64; 2]; 3], expected: Expected) -> Fixture {
    Fixture {
        name,
        instance: Instance {
            name: Some(name.to_string()),
            kind: ProblemKind::Classical2d,
            anchors: anchors.iter().map(|a| a.to_vec()).collect(),
            weights: None,
            target: None,
            options: Options::default(),
        },
        expected,
    }
}

fn forward(point: [f64; 2], value: f64, printed_point: [f64; 2], printed_value: Option<f64>) -> Expected {
    Expected::Forward {
        point,
        value,
        printed_point,
        printed_value,
    }
}

/// Weighted fixtures, equal-weight fixtures, then the inverse fixture.
pub fn fixtures() -> Vec<Fixture> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r15 = 15f64.sqrt();
    let r7511 = 7511f64.sqrt();
    let steel = [[2.0, 6.0], [1.0, 1.0], [5.0, 1.0]];
    let p11 = [(4103.0 + 1833.0 * r15) / 2866.0, (29523.0 - 4481.0 * r15) / 8598.0];

    vec![
        direct(
            "weighted-1",
            steel,
            [2.0, 3.0, 4.0],
            forward(p11, 2.0 * (79.0 + 15.0 * r15).sqrt(), [3.9086, 1.4152], Some(23.4174)),
        ),
        direct(
            "weighted-2",
            steel,
            [3.0, 5.0, 4.0],
            forward([751.0 / 485.0, 647.0 / 485.0], 970f64.sqrt(), [1.5484, 1.3340], Some(31.1448)),
        ),
        direct(
            "weighted-3",
            [[0.0, 0.0], [2.0, 0.0], [-r2, r2]],
            [1.5, 2.0, 2.0],
            forward(
                [
                    1.0 - 1.0 / r2 - 3.0 / 110f64.sqrt(),
                    1.0 / r2 - 3.0 / 55f64.sqrt() - 3.0 / 110f64.sqrt(),
                ],
                (32.0 + 23.0 / r2 + 3.0 * 27.5f64.sqrt()).sqrt(),
                [0.0068, 0.0165],
                Some(7.9997),
            ),
        ),
        direct(
            "weighted-4",
            [[39.0, 57.0], [22.0, 42.0], [42.0, 75.0]],
            [18.0, 41.0, 52.0],
            forward(
                [
                    296577529815837.0 / 9297789607234.0
                        + 357441196078431.0 / 6020318770684015.0 * r7511,
                    271001243105952.0 / 4648894803617.0
                        + 432306390086253.0 / 12040637541368030.0 * r7511,
                ],
                (3068047.0 + 3915.0 * r7511).sqrt(),
                [37.0432, 61.4053],
                Some(1845.8994),
            ),
        ),
        classical(
            "equal-1",
            [[1.0, 1.0], [3.0, 5.0], [7.0, 2.0]],
            forward(
                [2.0 * (1029.0 + 79.0 * r3) / 687.0, (1053.0 + 647.0 * r3) / 687.0],
                (41.0 + 22.0 * r3).sqrt(),
                [3.3939, 3.1639],
                Some(8.8941),
            ),
        ),
        classical(
            "equal-2",
            [[1.0, 2.0], [3.0, 3.0], [4.0, 1.0]],
            forward(
                [(15.0 + r3) / 6.0, (3.0 + r3) / 2.0],
                (10.0 + 5.0 * r3).sqrt(),
                [2.7886, 2.3660],
                Some(4.3197),
            ),
        ),
        classical(
            "equal-3",
            [[0.0, 0.0], [399.0, 0.0], [5005.0 / 38.0, 9555.0 * r3 / 38.0]],
            forward(
                [21255.0 / 133.0, 8580.0 * r3 / 133.0],
                784.0,
                [159.8120, 111.7368],
                None,
            ),
        ),
        classical(
            "equal-4",
            [[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]],
            forward(
                [1.0 / 13.0 + 4.0 * r3 / 39.0, 8.0 / 13.0 - 7.0 * r3 / 39.0],
                (5.0 + 2.0 * r3).sqrt(),
                [0.2545, 0.3045],
                Some(2.9093),
            ),
        ),
        Fixture {
            name: "inverse-2-3-4",
            instance: Instance {
                name: Some("inverse-2-3-4".to_string()),
                kind: ProblemKind::Inverse2d,
                anchors: steel.iter().map(|a| a.to_vec()).collect(),
                weights: None,
                target: Some(p11.to_vec()),
                options: Options::default(),
            },
            expected: Expected::Inverse {
                weights: [2.0 / 9.0, 3.0 / 9.0, 4.0 / 9.0],
                value: (-333980.0 + 193436.0 * r15) / 4299.0,
            },
        },
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Runs one fixture through the same pipeline the `solve` commands use.
pub fn check(f: &Fixture) -> Outcome {
    let record = process(0, &f.instance, Settings { oracle: true, ..Settings::default() });
    let mut out = Outcome {
        name: f.name,
        passed: false,
        point_error: f64::NAN,
        coordinate_error: f64::NAN,
        value_error: f64::NAN,
        printed_error: f64::NAN,
        message: String::new(),
    };
    if record.status != Status::Ok {
        out.message = record.error.map(|e| e.message).unwrap_or_default();
        return out;
    }
    let value = record.value.unwrap_or(f64::NAN);
    match &f.expected {
        Expected::Forward {
            point,
            value: expected_value,
            printed_point,
            printed_value,
        } => {
            let p = record.point.unwrap_or_default();
            let (dx, dy) = (p[0] - point[0], p[1] - point[1]);
            out.point_error = dx.hypot(dy) / point[0].hypot(point[1]);
            out.coordinate_error = rel(p[0], point[0]).max(rel(p[1], point[1]));
            out.value_error = rel(value, *expected_value);
            let mut printed = (p[0] - printed_point[0]).abs().max((p[1] - printed_point[1]).abs());
            if let Some(v) = printed_value {
                printed = printed.max((value - v).abs());
            }
            out.printed_error = printed;
            out.passed = out.point_error <= EXACT_TOLERANCE
                && out.value_error <= EXACT_TOLERANCE
                && out.printed_error < PRINTED_TOLERANCE;
        }
        Expected::Inverse { weights, value: expected_value } => {
            let w = record.weights.unwrap_or_default();
            out.point_error = (0..3).map(|j| (w[j] - weights[j]).abs()).fold(0.0, f64::max);
            out.coordinate_error = out.point_error;
            out.value_error = rel(value, *expected_value);
            out.printed_error = 0.0;
            out.passed = out.point_error <= RATIO_TOLERANCE && out.value_error <= EXACT_TOLERANCE;
        }
    }
    if !out.passed {
        out.message = "outside tolerance".to_string();
    }
    out
}

pub fn run_all() -> Vec<Outcome> {
    fixtures().iter().map(check).collect()
}

/// Pass/fail table followed by an `n/m fixtures passed` line.
pub fn render(outcomes: &[Outcome]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<13} {:<6} {:>10} {:>10} {:>10}  note",
        "fixture", "result", "point", "value", "printed"
    );
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:<13} {:<6} {:>10.2e} {:>10.2e} {:>10.2e}  {}",
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.point_error,
            o.value_error,
            o.printed_error,
            o.message
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(s, "{passed}/{} fixtures passed", outcomes.len());
    s
}
