use crate::config::{FileConfig, DEFAULTS};
use crate::snapshot::read_snapshot;
use anyhow::Result;
use clap::Args;
use phsep_core::summaries::{persistence_density, persistence_statistic};
use serde::Serialize;
use std::path::PathBuf;

/// H0 persistence summary of one embedding snapshot.
#[derive(Debug, Args)]
pub struct H0Args {
    /// Snapshot CSV file.
    pub snapshot: PathBuf,
    /// Threshold for P(persistence < t).
    #[arg(long)]
    pub t: Option<f64>,
    /// Histogram bin count.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Also emit the raw normalized persistence times.
    #[arg(long)]
    pub values: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
struct H0Output {
    seed: u64,
    n_points: usize,
    n_bars: usize,
    t: f64,
    p_lt_t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_persistences: Option<Vec<f64>>,
    histogram: Histogram,
}

#[derive(Serialize)]
struct Histogram {
    bin_edges: Vec<f64>,
    masses: Vec<f64>,
}

pub fn cmd_h0(args: &H0Args, file_cfg: &FileConfig) -> Result<()> {
    let t = file_cfg.resolve_f64(args.t, "t", DEFAULTS.t)?;
    let bins = file_cfg.resolve_usize(args.bins, "bins", DEFAULTS.bins)?;

    let pc = read_snapshot(&args.snapshot)?;
    let np = super::normalized_persistences(&pc)?;
    let density = persistence_density(&np, bins)?;
    let out = H0Output {
        seed: args.seed,
        n_points: pc.len(),
        n_bars: np.len(),
        t,
        p_lt_t: persistence_statistic(&np, t)?,
        normalized_persistences: args.values.then(|| np.values().to_vec()),
        histogram: Histogram {
            bin_edges: density.bin_edges,
            masses: density.masses,
        },
    };
    crate::commands::emit(&serde_json::to_string_pretty(&out)?)?;
    Ok(())
}
