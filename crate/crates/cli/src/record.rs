//! Result records, one JSON object per line on stdout.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    /// Exit code this error maps to: 2 for bad input, 3 for a failed self-check.
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl From<&CliError> for ErrorRecord {
    fn from(e: &CliError) -> Self {
        Self {
            code: e.exit_code(),
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

/// Weiszfeld run next to the closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub point: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// 1-based, like the regime tag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locked_vertex: Option<usize>,
    /// Distance to the closed-form point over the anchor scale.
    pub point_gap: f64,
    /// Relative difference of the objective values.
    pub value_gap: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// Position of the instance in its file.
    pub index: usize,
    /// Absent only when the file itself could not be parsed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<Instance>,
    pub status: Status,
    /// `interior` or `vertex-j` (1-based).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    /// Normalized inverse weights, caller order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Normalization factor of the inverse weights; `value` is in this scale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl ResultRecord {
    pub fn empty(index: usize, instance: Option<Instance>) -> Self {
        Self {
            index,
            instance,
            status: Status::Ok,
            regime: None,
            point: None,
            value: None,
            weights: None,
            scale: None,
            power: None,
            order: None,
            diagnostics: BTreeMap::new(),
            oracle: None,
            error: None,
        }
    }

    pub fn failure(index: usize, instance: Option<Instance>, e: &CliError) -> Self {
        Self {
            status: Status::Error,
            error: Some(e.into()),
            ..Self::empty(index, instance)
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(crate::EXIT_OK, |e| e.code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records contain only serializable data")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}
