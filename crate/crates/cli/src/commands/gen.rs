use crate::snapshot::write_snapshot;
use anyhow::Result;
use clap::Args;
use phsep_core::synth::{make_classification, SynthConfig};
use serde::Serialize;
use std::path::PathBuf;

/// Generate a seeded synthetic labeled dataset in the snapshot CSV format.
#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of samples.
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Number of features (dimension).
    #[arg(long, default_value_t = 40)]
    pub d: usize,
    /// Number of classes.
    #[arg(long, default_value_t = 2)]
    pub classes: usize,
    /// Gaussian clusters per class, centered on distinct hypercube vertices.
    #[arg(long, default_value_t = 1)]
    pub clusters_per_class: usize,
    /// Distance of cluster-center coordinates from the origin.
    #[arg(long, default_value_t = 1.0)]
    pub class_sep: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output snapshot path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct Digest {
    seed: u64,
    n: usize,
    d: usize,
    classes: usize,
    per_class: Vec<usize>,
    out: String,
}

pub fn cmd_gen(args: &GenArgs) -> Result<()> {
    let cfg = SynthConfig {
        n_samples: args.n,
        n_features: args.d,
        n_classes: args.classes,
        clusters_per_class: args.clusters_per_class,
        class_sep: args.class_sep,
        seed: args.seed,
    };
    let pc = make_classification(&cfg)?;
    write_snapshot(&args.out, &pc)?;

    let mut per_class = vec![0usize; args.classes];
    for &l in pc.labels().unwrap() {
        per_class[l] += 1;
    }
    let digest = Digest {
        seed: args.seed,
        n: pc.len(),
        d: pc.dim(),
        classes: args.classes,
        per_class,
        out: args.out.display().to_string(),
    };
    crate::commands::emit(&serde_json::to_string_pretty(&digest)?)?;
    Ok(())
}
