//! Machine-readable outputs: metric entries and the versioned RunReport.

use serde::{Deserialize, Serialize};

/// A finite metric value, or the defined marker for infinite separability
/// (Calinski-Harabasz with zero within-cluster dispersion).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricValue {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub infinite: bool,
}

impl From<f64> for MetricValue {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            Self {
                value: None,
                infinite: true,
            }
        } else {
            Self {
                value: Some(v),
                infinite: false,
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricEntry {
    pub name: String,
    #[serde(flatten)]
    pub value: MetricValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epoch: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RocAucSummary {
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub n_points: usize,
    pub p_lt_t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thornton: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ch: Option<MetricValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roc_auc: Option<RocAucSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_distance_to_previous: Option<f64>,
}

/// Per-metric trajectories rescaled so each maximum is 1; a series that is
/// identically zero (or carries an infinite entry) cannot be normalized and
/// stays `None`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct NormalizedSeries {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_lt_t: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thornton: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ch: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roc_auc: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub run_id: String,
    pub seed: u64,
    pub t: f64,
    pub bins: usize,
    pub delta: f64,
    pub window: usize,
    pub epochs: Vec<EpochRecord>,
    pub normalized: NormalizedSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_epoch: Option<usize>,
}

pub const RUN_REPORT_SCHEMA: u32 = 1;
