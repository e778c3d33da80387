use crate::config::{FileConfig, DEFAULTS};
use crate::errors::CodedError;
use crate::report::MetricEntry;
use crate::snapshot::{read_labels, read_snapshot};
use anyhow::Result;
use clap::Args;
use phsep_core::geometry::PointCloud;
use phsep_core::learners::FitConfig;
use phsep_core::metrics::{calinski_harabasz, roc_auc_n, thornton_index};
use phsep_core::summaries::persistence_statistic;
use serde::Serialize;
use std::path::PathBuf;

/// Separability metrics of one embedding snapshot.  Without any metric
/// flags, every metric the input supports is computed.
#[derive(Debug, Args)]
pub struct SeparabilityArgs {
    /// Snapshot CSV file.
    pub snapshot: PathBuf,
    /// Separate label file (one integer per line) when the snapshot has no
    /// label column.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Compute P(persistence < t).
    #[arg(long)]
    pub p_lt_t: bool,
    /// Compute the Thornton index (requires labels).
    #[arg(long)]
    pub thornton: bool,
    /// Compute the Calinski-Harabasz index over k-means clusters.
    #[arg(long)]
    pub ch: bool,
    /// Compute cross-validated ROC-AUC (requires labels).
    #[arg(long)]
    pub roc_auc: bool,
    #[arg(long)]
    pub t: Option<f64>,
    /// Neighbor count for Thornton and cluster count for k-means.
    #[arg(long)]
    pub k: Option<usize>,
    /// Cross-validation fold count.
    #[arg(long)]
    pub splits: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
struct SeparabilityOutput {
    seed: u64,
    n_points: usize,
    metrics: Vec<MetricEntry>,
}

fn entry(name: &str, value: f64) -> MetricEntry {
    MetricEntry {
        name: name.to_string(),
        value: value.into(),
        ci_low: None,
        ci_high: None,
        epoch: None,
    }
}

pub fn cmd_separability(args: &SeparabilityArgs, file_cfg: &FileConfig) -> Result<()> {
    let t = file_cfg.resolve_f64(args.t, "t", DEFAULTS.t)?;
    let k = file_cfg.resolve_usize(args.k, "k", DEFAULTS.k)?;
    let splits = file_cfg.resolve_usize(args.splits, "splits", DEFAULTS.splits)?;

    let mut pc = read_snapshot(&args.snapshot)?;
    if let Some(label_path) = &args.labels {
        let labels = read_labels(label_path)?;
        pc = PointCloud::with_labels(pc.coords().to_vec(), pc.dim(), labels)
            .map_err(|e| CodedError::parse(format!("{}: {e}", label_path.display())))?;
    }
    let labeled = pc.labels().is_some();

    let none_requested = !args.p_lt_t && !args.thornton && !args.ch && !args.roc_auc;
    let want_p = args.p_lt_t || none_requested;
    let want_ch = args.ch || none_requested;
    let want_thornton = args.thornton || (none_requested && labeled);
    let want_auc = args.roc_auc || (none_requested && labeled);

    if (args.thornton || args.roc_auc) && !labeled {
        return Err(CodedError::missing_labels(
            "supervised metric requested on an unlabeled snapshot",
        ));
    }

    let mut metrics = Vec::new();
    if want_p {
        let np = super::normalized_persistences(&pc)?;
        metrics.push(entry("p_lt_t", persistence_statistic(&np, t)?));
    }
    if want_thornton {
        metrics.push(entry("thornton", thornton_index(&pc, k)?));
    }
    if want_ch {
        metrics.push(entry("ch", calinski_harabasz(&pc, k, args.seed)?));
    }
    if want_auc {
        let report = roc_auc_n(&pc, splits, args.seed, FitConfig::default())?;
        metrics.push(MetricEntry {
            name: "roc_auc_n".to_string(),
            value: report.value.into(),
            ci_low: report.ci_low,
            ci_high: report.ci_high,
            epoch: None,
        });
    }

    let out = SeparabilityOutput {
        seed: args.seed,
        n_points: pc.len(),
        metrics,
    };
    crate::commands::emit(&serde_json::to_string_pretty(&out)?)?;
    Ok(())
}
