//! One instance in, one record out.

use rayon::prelude::*;
use torricelli::inverse::{circumcenter_2d, circumcenter_3d, power_of_point_3d};
use torricelli::objective::{weighted_distance_sum, weighted_distance_sum_3d};
use torricelli::solver::{solve_unchecked, DEFAULT_TOLERANCE};
use torricelli::{
    inverse_weights_2d, inverse_weights_3d, solve_classical, weiszfeld, Diagnostics, PlanarPoint,
    Regime, Solution, SpatialPoint, WeiszfeldConfig,
};

use crate::instance::{Instance, Problem};
use crate::record::{OracleComparison, ResultRecord, Status};
use crate::CliError;

/// Closed form and oracle must agree to this, relative to the anchor scale
/// for points and to the value for values.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Used when the instance does not set its own tolerance.
    pub tolerance: f64,
    pub oracle: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            oracle: false,
        }
    }
}

/// Processes a batch in parallel; the output keeps the input order.
pub fn process_all(instances: &[Instance], settings: Settings) -> Vec<ResultRecord> {
    instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| process(i, inst, settings))
        .collect()
}

pub fn process(index: usize, instance: &Instance, settings: Settings) -> ResultRecord {
    let mut record = ResultRecord::empty(index, Some(instance.clone()));
    let tol = instance.options.tolerance.unwrap_or(settings.tolerance);
    let outcome = instance
        .validate()
        .and_then(|problem| fill(&mut record, &problem, tol, settings.oracle));
    if let Err(e) = outcome {
        record.status = Status::Error;
        record.error = Some((&e).into());
    }
    record
}

fn fill(record: &mut ResultRecord, problem: &Problem, tol: f64, oracle: bool) -> Result<(), CliError> {
    match problem {
        Problem::Direct(t) => {
            let s = solve_unchecked(t)?;
            let m = t.weights().as_array();
            report_solution(record, &s);
            if oracle {
                record.oracle = Some(compare(t.anchors(), &m, &s)?);
            }
            s.diagnostics.check(tol, t.weights().sum())?;
        }
        Problem::Classical(a) => {
            let s = solve_classical(a[0], a[1], a[2])?;
            report_solution(record, &s);
            if oracle {
                record.oracle = Some(compare(a, &[1.0; 3], &s)?);
            }
            s.diagnostics.check(tol, 3.0)?;
        }
        Problem::Inverse2d(a, target) => {
            let inv = inverse_weights_2d(*a, *target)?;
            let m = inv.unnormalized_weights();
            let direct = weighted_distance_sum(a, &m, *target);
            let c = circumcenter_2d(*a)?;
            let r2 = a[0].distance(&c).powi(2);
            let expected_power = target.distance(&c).powi(2) - r2;

            record.point = Some(vec![target.x, target.y]);
            record.value = Some(inv.min_value);
            record.weights = Some(inv.weights.clone());
            record.scale = Some(inv.scale);
            record.power = Some(inv.power);
            record.order = Some(inv.order.clone());
            let d = &mut record.diagnostics;
            d.insert("stationarity".into(), inv.stationarity_residual);
            d.insert("value_determinant".into(), relative(inv.min_value, direct));
            d.insert("power_circumcircle".into(), (inv.power - expected_power).abs() / r2);

            if oracle {
                let fake = Solution {
                    regime: Regime::Interior,
                    point: *target,
                    value: direct,
                    diagnostics: Diagnostics::default(),
                };
                record.oracle = Some(compare(a, &m, &fake)?);
            }
            check_all(&record.diagnostics, tol)?;
        }
        Problem::Inverse3d(t, target) => {
            let inv = inverse_weights_3d(t, *target)?;
            let anchors = t.anchors();
            let m = inv.unnormalized_weights();
            let direct = weighted_distance_sum_3d(&anchors, &m, *target);
            let c = circumcenter_3d(t);
            let r2 = anchors[0].distance(&c).powi(2);
            let expected_power = target.distance(&c).powi(2) - r2;

            record.point = Some(vec![target.x, target.y, target.z]);
            record.value = Some(inv.min_value);
            record.weights = Some(inv.weights.clone());
            record.scale = Some(inv.scale);
            record.power = Some(inv.power);
            record.order = Some(inv.order.clone());
            let d = &mut record.diagnostics;
            d.insert("stationarity".into(), inv.stationarity_residual);
            d.insert("value_determinant".into(), relative(inv.min_value, direct));
            d.insert(
                "power_circumsphere".into(),
                (power_of_point_3d(t, *target) - expected_power).abs() / r2,
            );
            // Central differences share no code with the determinant formulas.
            let scale = torricelli::geometry::max_pairwise_distance_3d(&anchors);
            d.insert(
                "finite_difference_gradient".into(),
                fd_gradient_3d(&anchors, &inv.weights, *target, 1e-6 * scale),
            );
            // The central difference carries its own truncation error; judge it
            // by the oracle tolerance rather than the closed-form one.
            let fd = d.remove("finite_difference_gradient").unwrap();
            check_all(&record.diagnostics, tol)?;
            record.diagnostics.insert("finite_difference_gradient".into(), fd);
            if !(fd <= ORACLE_TOLERANCE) {
                return Err(CliError::OracleDisagreement(format!(
                    "finite-difference gradient {fd:e} at the target"
                )));
            }
        }
    }
    Ok(())
}

fn report_solution(record: &mut ResultRecord, s: &Solution) {
    record.regime = Some(s.regime.to_string());
    record.point = Some(vec![s.point.x, s.point.y]);
    record.value = Some(s.value);
    record
        .diagnostics
        .insert("stationarity".into(), s.diagnostics.stationarity_residual);
    for (k, v) in &s.diagnostics.identity_residuals {
        record.diagnostics.insert(k.clone(), *v);
    }
}

fn check_all(diagnostics: &std::collections::BTreeMap<String, f64>, tol: f64) -> Result<(), CliError> {
    for (name, value) in diagnostics {
        if !(*value <= tol) {
            return Err(torricelli::Error::InternalInconsistency(format!(
                "{name} = {value:e} exceeds {tol:e}"
            ))
            .into());
        }
    }
    Ok(())
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn fd_gradient_3d(anchors: &[SpatialPoint; 4], m: &[f64], p: SpatialPoint, h: f64) -> f64 {
    let f = |q: SpatialPoint| weighted_distance_sum_3d(anchors, m, q);
    let axes = [
        SpatialPoint::new(h, 0.0, 0.0),
        SpatialPoint::new(0.0, h, 0.0),
        SpatialPoint::new(0.0, 0.0, h),
    ];
    let total: f64 = m.iter().sum();
    axes.iter()
        .map(|e| ((f(p + *e) - f(p - *e)) / (2.0 * h)).powi(2))
        .sum::<f64>()
        .sqrt()
        / total
}

/// Runs Weiszfeld and measures how far it lands from `s`.
fn compare(anchors: &[PlanarPoint; 3], m: &[f64], s: &Solution) -> Result<OracleComparison, CliError> {
    let rep = weiszfeld(anchors, m, WeiszfeldConfig::default())?;
    let scale = torricelli::geometry::max_pairwise_distance_2d(anchors);
    let point_gap = rep.point.distance(&s.point) / scale;
    let value_gap = relative(weighted_distance_sum(anchors, m, rep.point), s.value);
    let same_vertex = match s.regime {
        Regime::Vertex(j) => rep.locked_vertex == Some(j),
        Regime::Interior => rep.locked_vertex.is_none(),
    };
    let agrees = same_vertex && point_gap <= ORACLE_TOLERANCE && value_gap <= ORACLE_TOLERANCE;
    let cmp = OracleComparison {
        point: vec![rep.point.x, rep.point.y],
        iterations: rep.iterations,
        converged: rep.converged,
        locked_vertex: rep.locked_vertex.map(|j| j + 1),
        point_gap,
        value_gap,
        agrees,
    };
    if agrees {
        Ok(cmp)
    } else {
        Err(CliError::OracleDisagreement(format!(
            "point gap {point_gap:e}, value gap {value_gap:e}, locked vertex {:?}",
            cmp.locked_vertex
        )))
    }
}
