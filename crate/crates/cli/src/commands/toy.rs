use crate::config::{FileConfig, DEFAULTS};
use crate::manifest::{EpochEntry, SnapshotManifest};
use crate::snapshot::write_snapshot;
use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use phsep_core::rng::SplitMix64;
use phsep_core::summaries::persistence_statistic;
use phsep_core::synth::{make_classification, SynthConfig};
use phsep_core::toylab::{train_toy, ToyNetConfig};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Both,
    Plain,
    LayerNorm,
}

/// Run the two-hidden-layer toy experiment over seeded synthetic datasets,
/// writing per-run snapshot manifests plus summary and boxplot CSVs.
#[derive(Debug, Args)]
pub struct ToyArgs {
    /// Number of seeded datasets.
    #[arg(long, default_value_t = 20)]
    pub datasets: usize,
    /// Training epochs per run.
    #[arg(long, default_value_t = 100)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Which model variants to train.
    #[arg(long, value_enum, default_value_t = Variant::Both)]
    pub variant: Variant,
    /// Samples per dataset; half train, half track.
    #[arg(long, default_value_t = 2000)]
    pub n_samples: usize,
    #[arg(long, default_value_t = 40)]
    pub n_features: usize,
    #[arg(long, default_value_t = 0.5)]
    pub class_sep: f64,
    /// Gaussian clusters per class; 0 draws 1..=3 per dataset from the seed.
    #[arg(long, default_value_t = 0)]
    pub clusters_per_class: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub lr: f64,
    #[arg(long)]
    pub t: Option<f64>,
    /// Output directory for manifests and CSVs.
    #[arg(long)]
    pub out_dir: PathBuf,
}

fn variant_list(v: Variant) -> Vec<(&'static str, bool)> {
    match v {
        Variant::Both => vec![("layer_norm", true), ("plain", false)],
        Variant::Plain => vec![("plain", false)],
        Variant::LayerNorm => vec![("layer_norm", true)],
    }
}

pub fn cmd_toy(args: &ToyArgs, file_cfg: &FileConfig) -> Result<()> {
    let t = file_cfg.resolve_f64(args.t, "t", DEFAULTS.t)?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let mut summary =
        String::from("variant,dataset,seed,final_auc,final_p_lt_t,median_norm_persistence\n");
    let mut boxplot = String::from("variant,dataset,norm_persistence\n");

    for dataset in 0..args.datasets {
        let dataset_seed = args.seed.wrapping_add(dataset as u64);
        let mut seed_rng = SplitMix64::new(dataset_seed);
        let clusters = if args.clusters_per_class == 0 {
            1 + seed_rng.next_below(3) as usize
        } else {
            args.clusters_per_class
        };
        let data = make_classification(&SynthConfig {
            n_samples: args.n_samples,
            n_features: args.n_features,
            n_classes: 2,
            clusters_per_class: clusters,
            class_sep: args.class_sep,
            seed: dataset_seed,
        })?;
        let half = data.len() / 2;
        let train: Vec<usize> = (0..half).collect();
        let track: Vec<usize> = (half..data.len()).collect();
        let train = data.select(&train);
        let track = data.select(&track);

        for (variant_name, use_ln) in variant_list(args.variant) {
            let cfg = ToyNetConfig::new(args.n_features, use_ln, dataset_seed);
            let trace = train_toy(&cfg, &train, &track, args.epochs, args.lr)?;

            let run_dir = args.out_dir.join(format!("{variant_name}_{dataset:03}"));
            std::fs::create_dir_all(&run_dir)?;
            let mut entries = Vec::with_capacity(trace.epochs.len());
            for (i, epoch) in trace.epochs.iter().enumerate() {
                let file = format!("epoch_{epoch:04}.csv");
                write_snapshot(&run_dir.join(&file), &trace.clouds[i])?;
                entries.push(EpochEntry {
                    epoch: *epoch,
                    path: file,
                });
            }
            let mut metadata = BTreeMap::new();
            metadata.insert("variant".to_string(), variant_name.to_string());
            metadata.insert("dataset_seed".to_string(), dataset_seed.to_string());
            metadata.insert("class_sep".to_string(), args.class_sep.to_string());
            metadata.insert("clusters_per_class".to_string(), clusters.to_string());
            metadata.insert("lr".to_string(), args.lr.to_string());
            let manifest = SnapshotManifest {
                run_id: format!("toy_{variant_name}_{dataset:03}"),
                epochs: entries,
                label_path: None,
                metadata,
            };
            manifest.save(&run_dir.join("manifest.json"))?;

            let final_cloud = trace.clouds.last().unwrap();
            let np = super::normalized_persistences(final_cloud)?;
            let final_auc = *trace.aucs.last().unwrap();
            summary.push_str(&format!(
                "{variant_name},{dataset},{dataset_seed},{final_auc},{},{}\n",
                persistence_statistic(&np, t)?,
                super::median(np.values().to_vec()),
            ));
            for v in np.values() {
                boxplot.push_str(&format!("{variant_name},{dataset},{v}\n"));
            }
        }
    }

    write_text(&args.out_dir.join("summary.csv"), &summary)?;
    write_text(&args.out_dir.join("final_persistences.csv"), &boxplot)?;
    eprintln!(
        "wrote {} and {}",
        args.out_dir.join("summary.csv").display(),
        args.out_dir.join("final_persistences.csv").display()
    );
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
