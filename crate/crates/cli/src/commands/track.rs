use crate::config::{FileConfig, DEFAULTS};
use crate::manifest::SnapshotManifest;
use crate::plot::{line_chart, silverman_kde, Series};
use crate::report::{
    EpochRecord, MetricValue, NormalizedSeries, RocAucSummary, RunReport, RUN_REPORT_SCHEMA,
};
use anyhow::{Context, Result};
use clap::Args;
use phsep_core::homology::NormalizedPersistences;
use phsep_core::learners::FitConfig;
use phsep_core::metrics::{calinski_harabasz, normalize_series, roc_auc_n, thornton_index};
use phsep_core::summaries::{
    density_distance, detect_convergence, persistence_statistic, StatisticSeries,
};
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Track separability across the epochs of a run manifest and write a
/// RunReport.
#[derive(Debug, Args)]
pub struct TrackArgs {
    /// Manifest JSON file.
    pub manifest: PathBuf,
    #[arg(long)]
    pub t: Option<f64>,
    /// Convergence threshold on successive statistic differences.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Consecutive small steps required for convergence.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub splits: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report output path.
    #[arg(long, default_value = "run_report.json")]
    pub out: PathBuf,
    /// Additionally write metric-curve and density-evolution SVGs (plus
    /// their underlying CSVs) next to the report.
    #[arg(long)]
    pub plot: bool,
}

pub fn cmd_track(args: &TrackArgs, file_cfg: &FileConfig) -> Result<()> {
    let t = file_cfg.resolve_f64(args.t, "t", DEFAULTS.t)?;
    let delta = file_cfg.resolve_f64(args.delta, "delta", DEFAULTS.delta)?;
    let window = file_cfg.resolve_usize(args.window, "window", DEFAULTS.window)?;
    let bins = file_cfg.resolve_usize(args.bins, "bins", DEFAULTS.bins)?;
    let k = file_cfg.resolve_usize(args.k, "k", DEFAULTS.k)?;
    let splits = file_cfg.resolve_usize(args.splits, "splits", DEFAULTS.splits)?;

    let manifest = SnapshotManifest::load(&args.manifest)?;
    let snapshots = manifest.load_snapshots(&args.manifest)?;

    let mut epochs = Vec::with_capacity(snapshots.len());
    let mut persistences: Vec<NormalizedPersistences> = Vec::with_capacity(snapshots.len());
    for (epoch, pc) in &snapshots {
        let np = super::normalized_persistences(pc)?;
        let p_lt_t = persistence_statistic(&np, t)?;
        let thornton = match pc.labels() {
            Some(_) => Some(thornton_index(pc, k.min(pc.len() - 1))?),
            None => None,
        };
        let ch = (pc.len() > k)
            .then(|| calinski_harabasz(pc, k, args.seed))
            .transpose()?
            .map(MetricValue::from);
        let roc_auc = match pc.labels() {
            Some(_) => {
                let r = roc_auc_n(pc, splits, args.seed, FitConfig::default())?;
                Some(RocAucSummary {
                    mean: r.value,
                    ci_low: r.ci_low.unwrap(),
                    ci_high: r.ci_high.unwrap(),
                })
            }
            None => None,
        };
        epochs.push(EpochRecord {
            epoch: *epoch,
            n_points: pc.len(),
            p_lt_t,
            thornton,
            ch,
            roc_auc,
            density_distance_to_previous: None,
        });
        persistences.push(np);
    }

    for i in 1..persistences.len() {
        epochs[i].density_distance_to_previous =
            Some(density_distance(&persistences[i - 1], &persistences[i])?);
    }

    let normalize_opt = |values: Vec<f64>| normalize_series(&values).ok();
    let normalized = NormalizedSeries {
        p_lt_t: normalize_opt(epochs.iter().map(|e| e.p_lt_t).collect()),
        thornton: epochs
            .iter()
            .map(|e| e.thornton)
            .collect::<Option<Vec<_>>>()
            .and_then(normalize_opt),
        ch: epochs
            .iter()
            .map(|e| e.ch.as_ref().and_then(|v| v.value))
            .collect::<Option<Vec<_>>>()
            .and_then(normalize_opt),
        roc_auc: epochs
            .iter()
            .map(|e| e.roc_auc.as_ref().map(|r| r.mean))
            .collect::<Option<Vec<_>>>()
            .and_then(normalize_opt),
    };

    let series = StatisticSeries::new(
        epochs.iter().map(|e| e.epoch).collect(),
        epochs.iter().map(|e| e.p_lt_t).collect(),
    )?;
    let convergence_epoch = detect_convergence(&series, delta, window)?;

    let report = RunReport {
        schema: RUN_REPORT_SCHEMA,
        run_id: manifest.run_id.clone(),
        seed: args.seed,
        t,
        bins,
        delta,
        window,
        epochs,
        normalized,
        convergence_epoch,
    };
    std::fs::write(&args.out, serde_json::to_string_pretty(&report)? + "\n")
        .with_context(|| format!("writing {}", args.out.display()))?;

    if args.plot {
        write_plots(&args.out, &report, &persistences)?;
    }
    Ok(())
}

fn write_plots(
    report_path: &Path,
    report: &RunReport,
    persistences: &[NormalizedPersistences],
) -> Result<()> {
    let stem = report_path.with_extension("");
    let stem = stem.to_string_lossy();
    let epoch_ids: Vec<f64> = report.epochs.iter().map(|e| e.epoch as f64).collect();

    // metric curves (normalized where available)
    let mut series = Vec::new();
    let pair = |values: &Option<Vec<f64>>| -> Option<Vec<(f64, f64)>> {
        values
            .as_ref()
            .map(|vs| epoch_ids.iter().copied().zip(vs.iter().copied()).collect())
    };
    if let Some(points) = pair(&report.normalized.p_lt_t) {
        series.push(Series {
            label: "P(p<t)",
            points,
        });
    }
    if let Some(points) = pair(&report.normalized.thornton) {
        series.push(Series {
            label: "thornton",
            points,
        });
    }
    if let Some(points) = pair(&report.normalized.ch) {
        series.push(Series {
            label: "CH",
            points,
        });
    }
    if let Some(points) = pair(&report.normalized.roc_auc) {
        series.push(Series {
            label: "ROC-AUC",
            points,
        });
    }
    line_chart(
        Path::new(&format!("{stem}_metrics.svg")),
        "Normalized separability metrics",
        "epoch",
        &series,
    )?;

    // machine-readable companion
    let mut csv = String::from(
        "epoch,p_lt_t,thornton,ch,roc_auc_mean,roc_auc_ci_low,roc_auc_ci_high,density_distance_to_previous\n",
    );
    for e in &report.epochs {
        let fmt_opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            e.epoch,
            e.p_lt_t,
            fmt_opt(e.thornton),
            fmt_opt(e.ch.as_ref().and_then(|v| v.value)),
            fmt_opt(e.roc_auc.as_ref().map(|r| r.mean)),
            fmt_opt(e.roc_auc.as_ref().map(|r| r.ci_low)),
            fmt_opt(e.roc_auc.as_ref().map(|r| r.ci_high)),
            fmt_opt(e.density_distance_to_previous),
        ));
    }
    std::fs::write(format!("{stem}_metrics.csv"), csv)?;

    // density evolution: smoothed curves for up to six evenly spaced epochs
    let count = persistences.len();
    let picks: Vec<usize> = if count <= 6 {
        (0..count).collect()
    } else {
        (0..6).map(|i| i * (count - 1) / 5).collect()
    };
    let mut density_series = Vec::new();
    let labels: Vec<String> = picks
        .iter()
        .map(|&i| format!("epoch {}", report.epochs[i].epoch))
        .collect();
    for (slot, &i) in picks.iter().enumerate() {
        density_series.push(Series {
            label: &labels[slot],
            points: silverman_kde(persistences[i].values(), 101),
        });
    }
    line_chart(
        Path::new(&format!("{stem}_densities.svg")),
        "Evolution of normalized persistence-time densities",
        "normalized persistence",
        &density_series,
    )?;

    let mut dens_csv = String::from("epoch,x,density\n");
    let mut out = std::fs::File::create(format!("{stem}_densities.csv"))?;
    for (slot, &i) in picks.iter().enumerate() {
        for (x, y) in &density_series[slot].points {
            dens_csv.push_str(&format!("{},{x},{y}\n", report.epochs[i].epoch));
        }
    }
    out.write_all(dens_csv.as_bytes())?;
    Ok(())
}
