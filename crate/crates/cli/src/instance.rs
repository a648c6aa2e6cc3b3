//! Instance files.
//!
//! A file holds one JSON object or an array of them:
//!
//! ```json
//! {
//!   "name": "steel-works",
//!   "kind": "direct2d",
//!   "anchors": [[2, 6], [1, 1], [5, 1]],
//!   "weights": [3, 5, 4],
//!   "options": { "tolerance": 1e-9 }
//! }
//! ```
//!
//! `kind` is one of `direct2d`, `classical2d`, `inverse2d`, `inverse3d`.
//! `weights` appear only for `direct2d`; `target` only for the inverse kinds.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use torricelli::{PlanarPoint, SpatialPoint, TetrahedronInstance, TriangleInstance, WeightTriple};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Direct2d,
    Classical2d,
    Inverse2d,
    Inverse3d,
}

impl ProblemKind {
    pub fn anchor_count(self) -> usize {
        match self {
            ProblemKind::Inverse3d => 4,
            _ => 3,
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            ProblemKind::Inverse3d => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::Direct2d => "direct2d",
            ProblemKind::Classical2d => "classical2d",
            ProblemKind::Inverse2d => "inverse2d",
            ProblemKind::Inverse3d => "inverse3d",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Relative residual tolerance for this instance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.tolerance.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: ProblemKind,
    pub anchors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum InstanceFile {
    One(Instance),
    Many(Vec<Instance>),
}

/// Parses the contents of an instance file.
pub fn parse_instances(text: &str) -> Result<Vec<Instance>, CliError> {
    match serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))? {
        InstanceFile::One(i) => Ok(vec![i]),
        InstanceFile::Many(v) => Ok(v),
    }
}

pub fn read_instances(path: &Path) -> Result<Vec<Instance>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    parse_instances(&text)
}

/// A validated instance, ready for the solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Direct(TriangleInstance),
    Classical([PlanarPoint; 3]),
    Inverse2d([PlanarPoint; 3], PlanarPoint),
    Inverse3d(TetrahedronInstance, SpatialPoint),
}

impl Instance {
    pub fn direct(anchors: [[f64; 2]; 3], weights: [f64; 3]) -> Self {
        Self {
            name: None,
            kind: ProblemKind::Direct2d,
            anchors: anchors.iter().map(|a| a.to_vec()).collect(),
            weights: Some(weights.to_vec()),
            target: None,
            options: Options::default(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Checks the shape invariants and builds the typed problem.
    pub fn validate(&self) -> Result<Problem, CliError> {
        let kind = self.kind;
        if self.anchors.len() != kind.anchor_count() {
            return Err(CliError::Malformed(format!(
                "{kind} needs {} anchors, found {}",
                kind.anchor_count(),
                self.anchors.len()
            )));
        }
        if let Some(bad) = self.anchors.iter().find(|a| a.len() != kind.dimension()) {
            return Err(CliError::Malformed(format!(
                "{kind} anchors need {} coordinates, found {}",
                kind.dimension(),
                bad.len()
            )));
        }
        match (kind, &self.weights) {
            (ProblemKind::Direct2d, None) => {
                return Err(CliError::Malformed("direct2d requires weights".into()))
            }
            (ProblemKind::Direct2d, Some(w)) if w.len() != 3 => {
                return Err(CliError::Malformed(format!("expected 3 weights, found {}", w.len())))
            }
            (ProblemKind::Direct2d, _) | (_, None) => {}
            (_, Some(_)) => {
                return Err(CliError::Malformed(format!("{kind} does not take weights")))
            }
        }
        let needs_target = matches!(kind, ProblemKind::Inverse2d | ProblemKind::Inverse3d);
        match &self.target {
            None if needs_target => {
                return Err(CliError::Malformed(format!("{kind} requires a target")))
            }
            Some(_) if !needs_target => {
                return Err(CliError::Malformed(format!("{kind} does not take a target")))
            }
            Some(t) if t.len() != kind.dimension() => {
                return Err(CliError::Malformed(format!(
                    "target needs {} coordinates, found {}",
                    kind.dimension(),
                    t.len()
                )))
            }
            _ => {}
        }
        if let Some(tol) = self.options.tolerance {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(CliError::Malformed(format!("invalid tolerance {tol}")));
            }
        }

        let planar = |i: usize| PlanarPoint::new(self.anchors[i][0], self.anchors[i][1]);
        let spatial = |v: &[f64]| SpatialPoint::new(v[0], v[1], v[2]);
        let triangle = [planar(0), planar(1), planar(2)];
        Ok(match kind {
            ProblemKind::Direct2d => {
                let w = self.weights.as_ref().expect("checked above");
                let weights = WeightTriple::new(w[0], w[1], w[2])?;
                Problem::Direct(TriangleInstance::new(triangle[0], triangle[1], triangle[2], weights)?)
            }
            ProblemKind::Classical2d => Problem::Classical(triangle),
            ProblemKind::Inverse2d => {
                let t = self.target.as_ref().expect("checked above");
                Problem::Inverse2d(triangle, PlanarPoint::new(t[0], t[1]))
            }
            ProblemKind::Inverse3d => {
                let a: Vec<SpatialPoint> = self.anchors.iter().map(|v| spatial(v)).collect();
                let t = self.target.as_ref().expect("checked above");
                Problem::Inverse3d(TetrahedronInstance::new(a[0], a[1], a[2], a[3])?, spatial(t))
            }
        })
    }
}
